#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "unmate/connection.hpp"
#include "unmate/skeleton.hpp"

namespace unmate {

// Degree-2 curve lifting: from a mapping portrait (marked points with
// their images and local degrees) and a cyclic order of the postcritical
// points, build every level-1 skeleton and drive the pseudo-equator
// non-existence check.

struct MappingPortrait {
    struct Point {
        std::string name;
        std::string image;
        int degree = 1;
        bool post = false;
    };
    std::string name = "portrait";
    std::vector<Point> points;
    std::map<std::string, int> index;

    const Point& at(const std::string& n) const {
        auto it = index.find(n);
        if (it == index.end()) throw std::invalid_argument("unknown point '" + n + "'");
        return points[it->second];
    }
    std::vector<std::string> posts() const {
        std::vector<std::string> out;
        for (const auto& p : points)
            if (p.post) out.push_back(p.name);
        return out;
    }
    std::vector<std::string> preimages(const std::string& target) const {
        std::vector<std::string> out;
        for (const auto& p : points)
            if (p.image == target) out.push_back(p.name);
        return out;
    }
    int degree_sum() const {
        int d = 0;
        for (const auto& p : points) d += p.degree - 1;
        return d / 2 + 1;  // from sum (deg-1) = 2d-2
    }
};

// Mapping-portrait file: lines "point <name> image=<name> deg=<n> [post]".
inline MappingPortrait parse_mapping_portrait(const std::string& text) {
    MappingPortrait mp;
    std::istringstream in(text);
    std::string raw;
    int ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        std::string line = raw.substr(0, raw.find('#'));
        auto tok = detail::tokens(line);
        if (tok.empty()) continue;
        if (tok[0] == "name") {
            if (tok.size() != 2) throw parse_error(ln, "usage: name <name>");
            mp.name = tok[1];
        } else if (tok[0] == "point") {
            if (tok.size() < 3) throw parse_error(ln, "usage: point <name> image=<name> [deg=<n>] [post]");
            MappingPortrait::Point p;
            p.name = tok[1];
            if (mp.index.count(p.name)) throw parse_error(ln, "duplicate point '" + p.name + "'");
            p.image = detail::expect_kv(tok[2], "image", ln);
            for (size_t i = 3; i < tok.size(); ++i) {
                if (tok[i] == "post") p.post = true;
                else if (tok[i].rfind("deg=", 0) == 0) p.degree = detail::parse_int(tok[i].substr(4), ln);
                else throw parse_error(ln, "unknown token '" + tok[i] + "'");
            }
            mp.index[p.name] = static_cast<int>(mp.points.size());
            mp.points.push_back(std::move(p));
        } else {
            throw parse_error(ln, "unknown directive '" + tok[0] + "'");
        }
    }
    for (const auto& p : mp.points)
        if (!mp.index.count(p.image))
            throw std::invalid_argument("point " + p.name + " maps to unknown point " + p.image);
    return mp;
}

// Structural checks for the degree-2 lift: exactly two critical points of
// local degree 2, both critical values postcritical, marked set equal to
// post union its full preimage (checked by multiplicity), and the
// postcritical set forward-closed.
inline void check_lift2_preconditions(const MappingPortrait& mp) {
    int excess = 0;
    for (const auto& p : mp.points) excess += p.degree - 1;
    if (excess % 2 != 0) throw std::invalid_argument("sum of local degrees minus one is odd");
    int d = mp.degree_sum();
    if (d != 2) throw std::invalid_argument("lift requires degree 2, portrait has degree " + std::to_string(d));
    std::vector<std::string> crit;
    for (const auto& p : mp.points) {
        if (p.degree == 2) crit.push_back(p.name);
        else if (p.degree != 1) throw std::invalid_argument("local degree out of range at " + p.name);
    }
    if (crit.size() != 2) throw std::invalid_argument("need exactly two critical points");
    for (const auto& c : crit)
        if (!mp.at(mp.at(c).image).post)
            throw std::invalid_argument("critical value " + mp.at(c).image + " is not postcritical (off C)");
    if (mp.at(crit[0]).image == mp.at(crit[1]).image)
        throw std::invalid_argument("critical values coincide, not a two-arc configuration");
    for (const auto& p : mp.points) {
        if (p.post && !mp.at(p.image).post)
            throw std::invalid_argument("postcritical set not forward-closed at " + p.name);
        if (!p.post && !mp.at(p.image).post)
            throw std::invalid_argument("marked point " + p.name + " is neither postcritical nor a preimage of one");
    }
    for (const auto& q : mp.points) {
        if (!q.post) continue;
        int mult = 0;
        for (const auto& p : mp.points)
            if (p.image == q.name) mult += p.degree;
        if (mult != 2)
            throw std::invalid_argument("preimages of " + q.name + " have multiplicity " +
                                        std::to_string(mult) + ", expected 2");
    }
}

// All skeletons for one cyclic order of post(f) on C. The curve C is cut
// at the two critical values into arcs alpha and beta; each arc has two
// lifts joining the critical points, and each interior postcritical point
// has its two preimages distributed one per lift. Every consistent
// distribution yields one skeleton.
inline std::vector<Skeleton> lift_degree2(const MappingPortrait& mp,
                                          const std::vector<std::string>& order) {
    check_lift2_preconditions(mp);
    auto posts = mp.posts();
    if (order.size() != posts.size())
        throw std::invalid_argument("cyclic order must list every postcritical point once");
    std::map<std::string, int> pos;
    for (size_t j = 0; j < order.size(); ++j) {
        mp.at(order[j]);
        if (!mp.at(order[j]).post) throw std::invalid_argument(order[j] + " is not postcritical");
        if (pos.count(order[j])) throw std::invalid_argument("duplicate point in cyclic order");
        pos[order[j]] = static_cast<int>(j);
    }
    int k = static_cast<int>(order.size());

    std::vector<std::string> crit;
    for (const auto& p : mp.points)
        if (p.degree == 2) crit.push_back(p.name);
    const std::string ca = crit[0], cb = crit[1];
    int ia = pos.at(mp.at(ca).image), ib = pos.at(mp.at(cb).image);

    // interior posts of the arc from `from` (exclusive) to `to` (exclusive)
    auto interior = [&](int from, int to) {
        std::vector<std::string> out;
        for (int j = (from + 1) % k; j != to; j = (j + 1) % k) out.push_back(order[j]);
        return out;
    };
    std::vector<std::string> alpha = interior(ia, ib);  // lifts run ca -> cb
    std::vector<std::string> beta = interior(ib, ia);   // lifts run cb -> ca

    struct Chain { std::vector<std::string> via; };  // interior vertices of one lift

    int m = static_cast<int>(alpha.size() + beta.size());
    std::vector<Skeleton> out;
    for (int bits = 0; bits < (1 << m); ++bits) {
        // preimage assignment: bit t decides the orientation of the t-th swap
        Chain A1, A2, B1, B2;
        int t = 0;
        bool ok = true;
        for (const auto& y : alpha) {
            auto pre = mp.preimages(y);
            if (pre.size() != 2) { ok = false; break; }
            bool swap = (bits >> t++) & 1;
            A1.via.push_back(pre[swap ? 1 : 0]);
            A2.via.push_back(pre[swap ? 0 : 1]);
        }
        for (const auto& y : beta) {
            auto pre = mp.preimages(y);
            if (pre.size() != 2) { ok = false; break; }
            bool swap = (bits >> t++) & 1;
            B1.via.push_back(pre[swap ? 1 : 0]);
            B2.via.push_back(pre[swap ? 0 : 1]);
        }
        if (!ok) throw std::logic_error("interior post without two simple preimages");

        Skeleton s;
        s.name = mp.name;
        s.degree = 2;
        s.k = k;
        s.post_labels = order;
        for (const auto& p : mp.points) {
            Skeleton::Vertex v;
            v.id = p.name;
            v.image = pos.at(mp.at(p.name).image);
            v.post = pos.count(p.name) ? pos.at(p.name) : -1;
            s.vindex[v.id] = static_cast<int>(s.vertices.size());
            s.vertices.push_back(std::move(v));
        }
        // edges of one lift chain from `head` over the base positions
        auto add_chain = [&](const std::string& from, const Chain& ch, const std::string& to,
                             int base_pos, const std::string& tag) {
            std::vector<std::string> stops;
            stops.push_back(from);
            stops.insert(stops.end(), ch.via.begin(), ch.via.end());
            stops.push_back(to);
            std::vector<int> eids;
            for (size_t i = 0; i + 1 < stops.size(); ++i) {
                Skeleton::Edge e;
                e.id = tag + std::to_string(i);
                e.type = (base_pos + static_cast<int>(i)) % k;
                e.tail = s.vindex.at(stops[i]);
                e.head = s.vindex.at(stops[i + 1]);
                s.eindex[e.id] = static_cast<int>(s.edges.size());
                eids.push_back(static_cast<int>(s.edges.size()));
                s.edges.push_back(std::move(e));
            }
            return eids;
        };
        auto ea1 = add_chain(ca, A1, cb, ia, "a1_");
        auto ea2 = add_chain(ca, A2, cb, ia, "a2_");
        auto eb1 = add_chain(cb, B1, ca, ib, "b1_");
        auto eb2 = add_chain(cb, B2, ca, ib, "b2_");

        // rotations: the four lift germs alternate around each critical
        // point; the counterclockwise orders at the two ends are reversed
        // copies of each other (the sphere embedding of the four-arc join)
        s.rot.assign(s.vertices.size(), {});
        s.rot[s.vindex.at(ca)] = {End{ea1.front(), false}, End{eb1.back(), true},
                                  End{ea2.front(), false}, End{eb2.back(), true}};
        s.rot[s.vindex.at(cb)] = {End{eb2.front(), false}, End{ea2.back(), true},
                                  End{eb1.front(), false}, End{ea1.back(), true}};
        auto chain_rots = [&](const std::vector<int>& eids) {
            for (size_t i = 0; i + 1 < eids.size(); ++i) {
                int v = s.edges[eids[i]].head;
                s.rot[v] = {End{eids[i + 1], false}, End{eids[i], true}};
            }
        };
        chain_rots(ea1);
        chain_rots(ea2);
        chain_rots(eb1);
        chain_rots(eb2);

        ValidationReport rep = validate(s);
        if (!rep.ok())
            throw std::logic_error("lifted skeleton fails validation: " + rep.str());
        out.push_back(std::move(s));
    }
    return out;
}

// All cyclic orders of the postcritical points up to rotation and
// reflection; reflection is identified with reversing the orientation of
// C. The first point is pinned to the lexicographically smallest name.
inline std::vector<std::vector<std::string>> cyclic_orders(const MappingPortrait& mp) {
    auto posts = mp.posts();
    std::sort(posts.begin(), posts.end());
    std::vector<std::string> rest(posts.begin() + 1, posts.end());
    std::vector<std::vector<std::string>> out;
    std::sort(rest.begin(), rest.end());
    do {
        std::vector<std::string> rev(rest.rbegin(), rest.rend());
        if (rest <= rev) {
            std::vector<std::string> full{posts[0]};
            full.insert(full.end(), rest.begin(), rest.end());
            out.push_back(std::move(full));
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

struct ObstructionOrderResult {
    std::vector<std::string> order;
    int skeletons = 0;
    int tree_connections = 0;
    int preserving = 0;
};

struct ObstructionReport {
    std::string portrait_name;
    int degree = 2;
    std::vector<ObstructionOrderResult> per_order;
    bool no_pseudo_equator = true;
    std::vector<std::pair<std::vector<std::string>, PseudoEquator>> candidates;
};

// Exhaustive check over every cyclic order and every lifted skeleton: the
// overall verdict is "no pseudo-equator candidate" exactly when every
// preserving-mode search comes back empty.
inline ObstructionReport obstruct(const MappingPortrait& mp, unsigned threads = 1) {
    check_lift2_preconditions(mp);
    ObstructionReport rep;
    rep.portrait_name = mp.name;
    for (const auto& order : cyclic_orders(mp)) {
        ObstructionOrderResult r;
        r.order = order;
        for (auto& s : lift_degree2(mp, order)) {
            ++r.skeletons;
            r.tree_connections += static_cast<int>(count_tree_connections(s));
            for (auto& pe : search(s, SearchMode::preserving, threads)) {
                ++r.preserving;
                rep.candidates.emplace_back(order, pe);
            }
        }
        if (r.preserving > 0) rep.no_pseudo_equator = false;
        rep.per_order.push_back(std::move(r));
    }
    return rep;
}

}  // namespace unmate
