#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "unmate/rational.hpp"
#include "unmate/skeleton.hpp"  // parse_error, detail::tokens

namespace unmate {

// Exact angle dynamics under t -> d*t mod 1 and the full critical-portrait
// axioms CP1-CP7. Rational angles make every orbit ultimately periodic, so
// each axiom, including the gap-separation axiom CP7, is decided exactly.

struct Orbit {
    int preperiod = 0;
    int period = 0;
    std::vector<Rat> points;  // theta, mu(theta), ... up to the first repeat
};

inline Orbit orbit(const Rat& theta, int d) {
    Orbit o;
    std::map<Rat, int> seen;
    Rat t = theta.mod1();
    while (!seen.count(t)) {
        seen[t] = static_cast<int>(o.points.size());
        o.points.push_back(t);
        t = mu(t, d);
    }
    o.preperiod = seen[t];
    o.period = static_cast<int>(o.points.size()) - o.preperiod;
    return o;
}

inline bool is_periodic(const Rat& theta, int d) { return orbit(theta, d).preperiod == 0; }

struct Portrait {
    int degree = 0;
    std::vector<std::vector<Rat>> sets;  // A_1, ..., A_m

    // Forward orbit set: union of mu^k(A_j) for k >= 1.
    std::vector<Rat> forward_set() const {
        std::set<Rat> acc;
        for (const auto& A : sets)
            for (const auto& a : A) {
                Orbit o = orbit(mu(a, degree), degree);
                acc.insert(o.points.begin(), o.points.end());
            }
        return {acc.begin(), acc.end()};
    }
};

// Portrait file: "degree <d>" then one "set a/b c/d ..." line per set.
inline Portrait parse_portrait(const std::string& text) {
    Portrait p;
    std::istringstream in(text);
    std::string raw;
    int ln = 0;
    bool saw_degree = false;
    while (std::getline(in, raw)) {
        ++ln;
        std::string line = raw.substr(0, raw.find('#'));
        auto tok = detail::tokens(line);
        if (tok.empty()) continue;
        if (tok[0] == "degree") {
            if (tok.size() != 2) throw parse_error(ln, "usage: degree <d>");
            p.degree = detail::parse_int(tok[1], ln);
            saw_degree = true;
        } else if (tok[0] == "set") {
            if (tok.size() < 2) throw parse_error(ln, "usage: set <p/q> ...");
            std::vector<Rat> A;
            for (size_t i = 1; i < tok.size(); ++i) {
                try {
                    A.push_back(Rat::parse(tok[i]).mod1());
                } catch (const std::invalid_argument& e) {
                    throw parse_error(ln, e.what());
                }
            }
            std::sort(A.begin(), A.end());
            p.sets.push_back(std::move(A));
        } else {
            throw parse_error(ln, "unknown directive '" + tok[0] + "'");
        }
    }
    if (!saw_degree) throw parse_error(ln, "missing degree header");
    return p;
}

// {x,y} crosses A iff A has points strictly inside both complementary open
// arcs. Points of the probe pair that lie in A are shifted infinitesimally
// counterclockwise (the documented boundary convention), so membership in
// the arc (x,y) counting rule is: p strictly after x, and at or before y.
namespace detail {

inline bool in_ccw_arc(const Rat& p, const Rat& x, const Rat& y) {
    // position of p in the arc starting just after x, ending at y (incl.)
    Rat dp = (p - x).mod1();
    Rat dy = (y - x).mod1();
    return !dp.is_zero() && (dp <= dy || dy.is_zero());
}

inline bool pair_crosses_set(const Rat& x, const Rat& y, const std::vector<Rat>& A) {
    bool side1 = false, side2 = false;
    for (const auto& a : A) {
        if (in_ccw_arc(a, x, y)) side1 = true;
        else side2 = true;
    }
    return side1 && side2;
}

}  // namespace detail

inline bool same_1gap(const Rat& x, const Rat& y, const Portrait& p) {
    if (x == y) return true;
    for (const auto& A : p.sets)
        if (detail::pair_crosses_set(x, y, A)) return false;
    return true;
}

// The 1-gap partition restricted to a finite point set (the formal
// intervals are represented by the points that start them on the
// counterclockwise side).
inline std::vector<std::vector<Rat>> gaps_of(const std::vector<Rat>& pts, const Portrait& p, int n) {
    std::vector<std::vector<Rat>> classes;
    for (const auto& x : pts) {
        bool placed = false;
        for (auto& cls : classes) {
            bool same = true;
            Rat a = x, b = cls.front();
            for (int t = 0; t < n && same; ++t) {
                if (!same_1gap(a, b, p)) same = false;
                a = mu(a, p.degree);
                b = mu(b, p.degree);
            }
            if (same) { cls.push_back(x); placed = true; break; }
        }
        if (!placed) classes.push_back({x});
    }
    return classes;
}

// Number of 1-gaps of the whole circle: equivalence classes of the
// complementary intervals between consecutive portrait points.
inline int count_1gaps(const Portrait& p) {
    std::set<Rat> ptset;
    for (const auto& A : p.sets) ptset.insert(A.begin(), A.end());
    std::vector<Rat> pts(ptset.begin(), ptset.end());
    if (pts.empty()) return 1;
    int M = static_cast<int>(pts.size());
    // midpoint representative of each interval [pts[i], pts[i+1])
    std::vector<Rat> mid;
    for (int i = 0; i < M; ++i) {
        Rat a = pts[i], b = pts[(i + 1) % M];
        Rat len = (b - a).mod1();
        if (len.is_zero()) len = Rat(1);
        mid.push_back((a + len / Rat(2)).mod1());
    }
    auto classes = gaps_of(mid, p, 1);
    return static_cast<int>(classes.size());
}

struct AxiomReport {
    std::string axiom;
    bool passed = true;
    std::string witness;  // what failed, when it failed
};

struct PortraitReport {
    std::vector<AxiomReport> axioms;
    std::optional<int> n0;  // separation depth when CP7 holds
    bool boundary_convention_used = false;
    bool ok() const {
        return std::all_of(axioms.begin(), axioms.end(), [](const AxiomReport& a) { return a.passed; });
    }
    const AxiomReport& operator[](int i) const { return axioms.at(i); }
};

// Full CP1-CP7 validation; every axiom is checked and reported
// independently. CP7 runs pair-state cycle detection over the forward set:
// a pair fails only if its joint 1-gap itinerary agrees forever, which is
// detected at cycle closure.
inline PortraitReport validate_portrait(const Portrait& p) {
    PortraitReport rep;
    auto add = [&](const std::string& name, bool ok, const std::string& wit) {
        rep.axioms.push_back(AxiomReport{name, ok, ok ? "" : wit});
    };

    // CP1: finite rational sets, pairwise disjoint
    {
        bool ok = !p.sets.empty();
        std::string wit = ok ? "" : "no sets";
        std::set<Rat> seen;
        for (const auto& A : p.sets) {
            if (A.empty()) { ok = false; wit = "empty set"; }
            for (const auto& a : A)
                if (!seen.insert(a).second) { ok = false; wit = "angle " + a.str() + " in two sets"; }
        }
        add("CP1", ok, wit);
    }
    // CP2: mu collapses each set to a point
    {
        bool ok = true;
        std::string wit;
        for (const auto& A : p.sets) {
            Rat img = mu(A.front(), p.degree);
            for (const auto& a : A)
                if (mu(a, p.degree) != img) {
                    if (ok) wit = "set with mu images " + img.str() + " and " + mu(a, p.degree).str();
                    ok = false;
                }
        }
        add("CP2", ok, wit);
    }
    // CP3: sum (#A_j - 1) = d - 1
    {
        long long excess = 0;
        for (const auto& A : p.sets) excess += static_cast<long long>(A.size()) - 1;
        add("CP3", excess == p.degree - 1,
            "excess " + std::to_string(excess) + " != d-1 = " + std::to_string(p.degree - 1));
    }
    // CP4: sets pairwise non-crossing
    {
        bool ok = true;
        std::string wit;
        for (size_t i = 0; i < p.sets.size() && ok; ++i)
            for (size_t j = i + 1; j < p.sets.size() && ok; ++j)
                for (const auto& s0 : p.sets[i]) {
                    for (const auto& u : p.sets[i])
                        if (!(s0 == u) && detail::pair_crosses_set(s0, u, p.sets[j])) {
                            ok = false;
                            wit = "sets " + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                  " cross at " + s0.str() + "," + u.str();
                            break;
                        }
                    if (!ok) break;
                }
        add("CP4", ok, wit);
    }
    // CP5: no angle periodic under mu
    {
        bool ok = true;
        std::string wit;
        for (const auto& A : p.sets)
            for (const auto& a : A) {
                Orbit o = orbit(a, p.degree);
                if (o.preperiod == 0) {
                    if (ok) wit = a.str() + " is periodic (period " + std::to_string(o.period) + ")";
                    ok = false;
                }
            }
        add("CP5", ok, wit);
    }
    auto fwd = p.forward_set();
    // CP6: no set holds two points of the forward set
    {
        bool ok = true;
        std::string wit;
        for (const auto& A : p.sets) {
            int hits = 0;
            for (const auto& a : A)
                if (std::binary_search(fwd.begin(), fwd.end(), a)) ++hits;
            if (hits > 1) {
                ok = false;
                wit = "a set contains " + std::to_string(hits) + " forward-orbit points";
            }
        }
        add("CP6", ok, wit);
    }
    // CP7: every pair of forward-orbit points eventually separated by the
    // 1-gap partition
    {
        bool ok = true;
        std::string wit;
        int depth = 1;
        std::set<Rat> ptset;
        for (const auto& A : p.sets) ptset.insert(A.begin(), A.end());
        for (size_t i = 0; i < fwd.size() && ok; ++i)
            for (size_t j = i + 1; j < fwd.size() && ok; ++j) {
                Rat a = fwd[i], b = fwd[j];
                std::set<std::pair<Rat, Rat>> states;
                int steps = 0;
                bool separated = false;
                while (states.insert({a, b}).second) {
                    if (ptset.count(a) || ptset.count(b)) rep.boundary_convention_used = true;
                    if (!same_1gap(a, b, p)) { separated = true; break; }
                    a = mu(a, p.degree);
                    b = mu(b, p.degree);
                    ++steps;
                }
                if (!separated) {
                    ok = false;
                    wit = "points " + fwd[i].str() + ", " + fwd[j].str() + " never separated";
                } else {
                    depth = std::max(depth, steps + 1);
                }
            }
        add("CP7", ok, wit);
        if (ok) rep.n0 = depth;
    }
    return rep;
}

}  // namespace unmate
