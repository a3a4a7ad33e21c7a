#pragma once

#include <sstream>
#include <string>

#include "unmate/connection.hpp"
#include "unmate/lift2.hpp"
#include "unmate/portrait.hpp"
#include "unmate/unmating.hpp"

namespace unmate {

// Plain-text reports with a stable schema. Every fraction is reduced,
// every list canonically ordered, so reports are bit-identical across runs
// and parallelism settings.

namespace report {

inline std::string angle_set(const AngleSet& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        out += s[i].str();
    }
    return out + "}";
}

inline std::string portrait_line(const char* tag, const std::vector<AngleSet>& sets) {
    std::string out = tag;
    out += ":";
    for (const auto& s : sets) out += " " + angle_set(s);
    return out + "\n";
}

inline std::string matrix_rows(const EdgeMatrix& M) {
    std::string out;
    for (int i = 0; i < M.k; ++i) {
        for (int j = 0; j < M.k; ++j) out += (j ? " " : "") + std::to_string(M.m[i][j]);
        if (i + 1 < M.k) out += " / ";
    }
    return out;
}

inline std::string lengths_line(const std::vector<Rat>& l) {
    std::string out = "l:";
    for (const auto& x : l) out += " " + x.str();
    return out + "\n";
}

inline std::string post_order_line(const Skeleton& s, const std::vector<int>& order) {
    std::string out = "post-order:";
    for (int j : order) out += " " + s.post_label(j);
    return out + "\n";
}

inline std::string isotopy_line(const Skeleton& s) {
    if (s.k <= 3) return "isotopy: exact (3 marked points)\n";
    return "isotopy: cyclic-order necessary condition only (" + std::to_string(s.k) +
           " marked points, unverified)\n";
}

inline std::string word_line(const EdgeSubstitution& sub, int i) {
    std::string out = "E" + std::to_string(i) + " ->";
    for (auto [t, sg] : sub.word[i]) out += std::string(" ") + (sg < 0 ? "-" : "") + "E" + std::to_string(t);
    return out + "\n";
}

inline std::string substitution_block(const EdgeSubstitution& sub) {
    std::string out;
    out += std::string("orientation: ") + (sub.preserving ? "preserving" : "reversing") + "\n";
    for (int i = 0; i < sub.k; ++i) out += word_line(sub, i);
    EdgeMatrix M = sub.abelianization();
    out += "abelianization: " + matrix_rows(M) + "\n";
    out += "column sums:";
    for (long long c : M.column_sums()) out += " " + std::to_string(c);
    out += "\n";
    return out;
}

}  // namespace report

inline std::string render_validation(const Skeleton& s, const ValidationReport& rep) {
    std::ostringstream o;
    o << "skeleton " << s.name << ": degree " << s.degree << ", " << s.k
      << " postcritical points, " << s.vertices.size() << " vertices, " << s.edges.size()
      << " edges\n";
    o << rep.str();
    if (rep.ok()) {
        int w = 0;
        for (const auto& f : s.faces)
            if (f.white) ++w;
        o << "faces: " << s.faces.size() << " (" << w << " white, " << s.faces.size() - w
          << " black)\n";
    }
    return o.str();
}

inline std::string render_search(const Skeleton& s, SearchMode mode, bool emit_portraits,
                                 unsigned threads = 1) {
    auto results = search(s, mode, threads);
    std::ostringstream o;
    const char* mname = mode == SearchMode::preserving ? "preserving"
                        : mode == SearchMode::reversing ? "reversing"
                                                        : "all";
    o << "search report for " << s.name << " (mode " << mname << ")\n";
    o << "spanning-tree connections: " << count_tree_connections(s)
      << ", results: " << results.size() << "\n";
    int idx = 0;
    for (const auto& pe : results) {
        o << "\nresult " << ++idx << "\n";
        o << "orientation: " << to_string(pe.orientation) << "\n";
        o << report::isotopy_line(s);
        o << report::post_order_line(s, pe.post_order);
        o << serialize_connection(s, pe.conn);
        if (emit_portraits) {
            EdgeMatrix M = edge_matrix(s, pe.walk, pe.orientation);
            o << "matrix: " << report::matrix_rows(M) << "\n";
            auto l = pf_vector(M, s.degree);
            o << report::lengths_line(l);
            if (pe.orientation == Orientation::preserving) {
                Rat t0 = base_angle(s, l);
                o << "theta0: " << t0.str() << "\n";
                auto a = edge_angles(s, pe.walk, l, t0);
                auto pp = extract_portraits(s, pe.conn, pe.walk, a);
                o << report::portrait_line("w", pp.white);
                o << report::portrait_line("b", pp.black);
            } else {
                o << "portraits: n/a (orientation-reversing)\n";
            }
        }
    }
    return o.str();
}

inline std::string render_unmate(const Skeleton& s, const Connection& c) {
    UnmatingResult r = unmate_connection(s, c);
    std::ostringstream o;
    o << "unmate report for " << s.name << "\n";
    o << "orientation: " << to_string(r.orientation) << "\n";
    o << report::isotopy_line(s);
    o << report::post_order_line(s, r.post_order);
    o << "matrix: " << report::matrix_rows(r.matrix) << "\n";
    o << report::lengths_line(r.lengths);
    if (r.orientation == Orientation::preserving) {
        o << "theta0: " << r.theta0.str() << "\n";
        o << report::portrait_line("w", r.portraits.white);
        o << report::portrait_line("b", r.portraits.black);
    } else {
        o << "portraits: n/a (orientation-reversing)\n";
    }
    return o.str();
}

inline std::string render_portrait_check(const Portrait& p) {
    PortraitReport rep = validate_portrait(p);
    std::ostringstream o;
    o << "portrait check: degree " << p.degree << ", " << p.sets.size() << " sets\n";
    for (const auto& ax : rep.axioms) {
        o << ax.axiom << " " << (ax.passed ? "pass" : "fail");
        if (!ax.passed) o << " (" << ax.witness << ")";
        if (ax.axiom == "CP7" && ax.passed && rep.n0) o << " (n0 = " << *rep.n0 << ")";
        o << "\n";
    }
    if (rep.boundary_convention_used)
        o << "note: an orbit point lies on a portrait angle; counterclockwise gap convention applied\n";
    o << "verdict: " << (rep.ok() ? "valid critical portrait" : "not a critical portrait") << "\n";
    return o.str();
}

inline std::string render_obstruct(const MappingPortrait& mp, unsigned threads = 1) {
    ObstructionReport rep = obstruct(mp, threads);
    std::ostringstream o;
    o << "obstruction report for " << rep.portrait_name << " (degree 2, "
      << rep.per_order.size() << " cyclic orders up to rotation and reflection;"
      << " reflection is identified with reversing the orientation of C)\n";
    int idx = 0;
    for (const auto& r : rep.per_order) {
        o << "order " << ++idx << ":";
        for (const auto& p : r.order) o << " " << p;
        o << " | skeletons " << r.skeletons << ", tree connections " << r.tree_connections
          << ", preserving " << r.preserving << "\n";
    }
    if (rep.no_pseudo_equator) {
        o << "verdict: NO-PSEUDO-EQUATOR\n";
    } else {
        o << "candidates passing the cyclic-order test (isotopy rel post unverified):\n";
        for (const auto& [order, pe] : rep.candidates) {
            o << "  order";
            for (const auto& p : order) o << " " << p;
            o << " |";
            std::string conn;
            for (size_t v = 0; v < pe.conn.at.size(); ++v)
                for (const auto& b : pe.conn.at[v].pi_w.blocks)
                    if (b.size() >= 2) {
                        conn += " conn-" + std::to_string(v) + ":{";
                        for (size_t t = 0; t < b.size(); ++t) conn += (t ? "," : "") + std::to_string(b[t]);
                        conn += "}";
                    }
            o << conn << "\n";
        }
        o << "verdict: CANDIDATES-FOUND (" << rep.candidates.size()
          << " candidate connections; cyclic-order necessary condition only)\n";
    }
    return o.str();
}

inline std::string render_compose(const Skeleton& s, const Connection& c, bool square) {
    OutlineWalk w = outline(s, c);
    if (!w.closed) throw std::invalid_argument("connection is not a spanning-tree connection");
    Orientation o9 = classify(s, w);
    EdgeSubstitution sub = substitution(s, w, o9);
    std::ostringstream o;
    o << "substitution report for " << s.name << "\n";
    o << report::substitution_block(sub);
    if (square) {
        o << "composed with itself:\n";
        o << report::substitution_block(compose(sub, sub));
    }
    return o.str();
}

}  // namespace unmate
