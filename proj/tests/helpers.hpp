#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "unmate/skeleton.hpp"

namespace testutil {

inline std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline std::string data_file(const std::string& name) {
    return std::string(UNMATE_DATA_DIR) + "/" + name;
}

inline unmate::Skeleton load_valid(const std::string& name) {
    unmate::Skeleton s = unmate::parse_skeleton(slurp(data_file(name)));
    auto rep = unmate::validate(s);
    if (!rep.ok()) throw std::runtime_error(name + " failed validation:\n" + rep.str());
    return s;
}

}  // namespace testutil
