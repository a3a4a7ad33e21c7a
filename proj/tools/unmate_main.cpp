// Command-line front end: validate skeletons, search for pseudo-equators,
// unmate a given connection, check critical portraits, run the degree-2
// obstruction, and compose edge substitutions.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "unmate/reports.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

unsigned thread_width(unsigned flag_value) {
    return unmate::search_threads_from_env(flag_value);
}

unmate::Skeleton load_skeleton(const std::string& path) {
    unmate::Skeleton s = unmate::parse_skeleton(read_input(path));
    auto rep = unmate::validate(s);
    if (!rep.ok()) throw std::runtime_error("invalid skeleton " + path + "\n" + rep.str());
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-equator search and unmating for postcritically finite maps "
                 "given as level-1 complexes"};
    app.require_subcommand(1);
    unsigned threads = 1;
    app.add_option("--threads", threads, "parallel search width (UNMATE_THREADS overrides)");

    std::string in_file, conn_file, mode_name = "preserving";
    bool emit_portraits = false, square = false;

    auto* validate_cmd = app.add_subcommand("validate", "check a skeleton file");
    validate_cmd->add_option("file", in_file, "skeleton file ('-' for stdin)")->required();

    auto* search_cmd = app.add_subcommand("search", "enumerate pseudo-equators");
    search_cmd->add_option("file", in_file)->required();
    search_cmd->add_option("--mode", mode_name, "preserving|reversing|all")
        ->check(CLI::IsMember({"preserving", "reversing", "all"}));
    search_cmd->add_flag("--emit-portraits", emit_portraits, "include matrices and portraits");

    auto* unmate_cmd = app.add_subcommand("unmate", "unmate one connection");
    unmate_cmd->add_option("file", in_file)->required();
    unmate_cmd->add_option("connection", conn_file)->required();

    auto* portrait_cmd = app.add_subcommand("portrait-check", "validate a critical portrait");
    portrait_cmd->add_option("file", in_file)->required();

    auto* obstruct_cmd = app.add_subcommand("obstruct", "degree-2 pseudo-equator obstruction");
    obstruct_cmd->add_option("file", in_file, "mapping portrait file")->required();

    auto* compose_cmd = app.add_subcommand("compose", "edge substitution of a connection");
    compose_cmd->add_option("file", in_file)->required();
    compose_cmd->add_option("connection", conn_file)->required();
    compose_cmd->add_flag("--square", square, "also compose the substitution with itself");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*validate_cmd) {
            unmate::Skeleton s = unmate::parse_skeleton(read_input(in_file));
            auto rep = unmate::validate(s);
            std::cout << unmate::render_validation(s, rep);
            return rep.ok() ? 0 : 1;
        }
        if (*search_cmd) {
            unmate::SearchMode mode = mode_name == "preserving" ? unmate::SearchMode::preserving
                                      : mode_name == "reversing" ? unmate::SearchMode::reversing
                                                                 : unmate::SearchMode::all;
            unmate::Skeleton s = load_skeleton(in_file);
            std::cout << unmate::render_search(s, mode, emit_portraits, thread_width(threads));
            return 0;
        }
        if (*unmate_cmd) {
            unmate::Skeleton s = load_skeleton(in_file);
            unmate::Connection c = unmate::parse_connection(read_input(conn_file), s);
            std::cout << unmate::render_unmate(s, c);
            return 0;
        }
        if (*portrait_cmd) {
            unmate::Portrait p = unmate::parse_portrait(read_input(in_file));
            std::string out = unmate::render_portrait_check(p);
            std::cout << out;
            return out.find("verdict: valid") != std::string::npos ? 0 : 1;
        }
        if (*obstruct_cmd) {
            unmate::MappingPortrait mp = unmate::parse_mapping_portrait(read_input(in_file));
            std::cout << unmate::render_obstruct(mp, thread_width(threads));
            return 0;
        }
        if (*compose_cmd) {
            unmate::Skeleton s = load_skeleton(in_file);
            unmate::Connection c = unmate::parse_connection(read_input(conn_file), s);
            std::cout << unmate::render_compose(s, c, square);
            return 0;
        }
    } catch (const unmate::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
