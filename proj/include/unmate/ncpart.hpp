#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace unmate {

// Non-crossing partitions of the tile indices around a 1-vertex. The 2n
// tiles are indexed 0..2n-1 counterclockwise, whites even, blacks odd. A
// white partition lives on the evens, its complement on the odds, and the
// pair is a cnc-partition once the complement is the maximal one.

using Block = std::vector<int>;  // sorted ascending

struct NcPartition {
    int two_n = 0;        // size of the full ground set 0..2n-1
    bool on_evens = true; // which parity class this partition lives on
    std::vector<Block> blocks;

    int n() const { return two_n / 2; }

    void canonicalize() {
        for (auto& b : blocks) std::sort(b.begin(), b.end());
        std::sort(blocks.begin(), blocks.end(),
                  [](const Block& a, const Block& b) { return a.front() < b.front(); });
    }

    const Block* block_of(int i) const {
        for (const auto& b : blocks)
            if (std::find(b.begin(), b.end(), i) != b.end()) return &b;
        return nullptr;
    }

    // Cyclic successor of i inside its block (succeeding-pair partner).
    int successor(int i) const {
        const Block* b = block_of(i);
        if (!b) throw std::invalid_argument("index not in partition: " + std::to_string(i));
        auto it = std::find(b->begin(), b->end(), i);
        ++it;
        return it == b->end() ? b->front() : *it;
    }

    std::string str() const {
        std::string s;
        for (size_t k = 0; k < blocks.size(); ++k) {
            s += k ? ",{" : "{";
            for (size_t m = 0; m < blocks[k].size(); ++m) {
                if (m) s += ",";
                s += std::to_string(blocks[k][m]);
            }
            s += "}";
        }
        return s;
    }
};

namespace detail {

// Checks that blocks are disjoint, non-empty, and cover exactly the given
// ground set.
inline void check_partition(const std::vector<Block>& blocks, const std::vector<int>& ground) {
    std::vector<int> seen;
    for (const auto& b : blocks) {
        if (b.empty()) throw std::invalid_argument("empty block");
        seen.insert(seen.end(), b.begin(), b.end());
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw std::invalid_argument("blocks not disjoint");
    if (seen != ground) throw std::invalid_argument("blocks do not cover the ground set");
}

}  // namespace detail

// Two blocks cross if some a < b < c < d has a,c in one and b,d in the
// other. On a cyclic ground set this linear test against every rotation is
// equivalent to testing the sorted representatives directly: a crossing in
// cyclic sense always yields one in linear sense for some labeling, and
// interleaving of sorted blocks captures exactly that.
inline bool blocks_cross(const Block& x, const Block& y) {
    // Merge and look for the pattern x y x y or y x y x cyclically. Since
    // both blocks are sorted, walk the circle once and count color changes:
    // non-crossing iff the merged cyclic word has at most 2 runs.
    struct Tag { int v; bool from_x; };
    std::vector<Tag> merged;
    merged.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i] < y[j])) merged.push_back({x[i++], true});
        else merged.push_back({y[j++], false});
    }
    int changes = 0;
    for (size_t k = 0; k < merged.size(); ++k)
        if (merged[k].from_x != merged[(k + 1) % merged.size()].from_x) ++changes;
    return changes > 2;
}

inline bool is_noncrossing(const std::vector<Block>& blocks) {
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = i + 1; j < blocks.size(); ++j)
            if (blocks_cross(blocks[i], blocks[j])) return false;
    return true;
}

inline bool is_noncrossing(const NcPartition& p) { return is_noncrossing(p.blocks); }

// Maximal partition of the odd indices whose union with pi_w is still
// non-crossing (the Kreweras-type complement). Generated by the arc
// relations: every succeeding pair (i,j) of a white block identifies the
// odd neighbours i+1 and j-1 as lying in one complementary region.
inline NcPartition complement(const NcPartition& pi_w) {
    if (!pi_w.on_evens) throw std::invalid_argument("complement expects a white partition");
    int two_n = pi_w.two_n;
    std::vector<int> parent(two_n);
    for (int i = 0; i < two_n; ++i) parent[i] = i;
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

    for (const auto& b : pi_w.blocks)
        for (size_t m = 0; m < b.size(); ++m) {
            int i = b[m];
            int j = b[(m + 1) % b.size()];  // succeeding pair (i, j)
            unite((i + 1) % two_n, (j - 1 + two_n) % two_n);
        }

    std::vector<Block> out;
    for (int r = 1; r < two_n; r += 2) {
        if (find(r) != r) continue;
        Block blk;
        for (int m = 1; m < two_n; m += 2)
            if (find(m) == r) blk.push_back(m);
        out.push_back(std::move(blk));
    }
    NcPartition pi_b{two_n, false, std::move(out)};
    pi_b.canonicalize();
    return pi_b;
}

// A cnc-partition, optionally marked. The mark is a succeeding pair (i,j)
// of a white block and designates the arc that carries the vertex itself.
struct CncPartition {
    NcPartition pi_w;
    NcPartition pi_b;
    std::optional<std::pair<int, int>> mark;

    int n() const { return pi_w.n(); }

    std::string str() const {
        std::string s = "w:" + pi_w.str() + " b:" + pi_b.str();
        if (mark) s += " m:(" + std::to_string(mark->first) + "," + std::to_string(mark->second) + ")";
        return s;
    }
};

inline std::vector<std::pair<int, int>> succeeding_pairs(const NcPartition& pi_w) {
    std::vector<std::pair<int, int>> out;
    for (const auto& b : pi_w.blocks)
        for (size_t m = 0; m < b.size(); ++m)
            out.emplace_back(b[m], b[(m + 1) % b.size()]);
    std::sort(out.begin(), out.end());
    return out;
}

inline CncPartition make_cnc(NcPartition pi_w, std::optional<std::pair<int, int>> mark = {}) {
    if (!is_noncrossing(pi_w)) throw std::invalid_argument("white partition is crossing");
    CncPartition c;
    c.pi_b = complement(pi_w);
    c.pi_w = std::move(pi_w);
    c.pi_w.canonicalize();
    if (mark) {
        auto pairs = succeeding_pairs(c.pi_w);
        if (std::find(pairs.begin(), pairs.end(), *mark) == pairs.end())
            throw std::invalid_argument("mark is not a succeeding pair of a white block");
    }
    c.mark = mark;
    return c;
}

// One arc of the geometric representation: the succeeding pair (i,j) of a
// white block, drawn from circle position i+1 to position j. Each position
// carries exactly one arc endpoint; odd endpoints are entry points of the
// outline walk, even endpoints its exits.
struct Arc {
    int i = 0, j = 0;
    int entry() const { return i + 1; }  // odd endpoint, taken mod 2n by caller
    bool marked = false;
};

struct Region {
    bool white = true;
    Block indices;              // block of pi_w or pi_b this region realizes
    std::vector<int> arc_ids;   // bounding arcs
};

struct ArcDiagram {
    int two_n = 0;
    std::vector<Arc> arcs;          // sorted by (i, j)
    std::vector<Region> regions;    // whites first, then blacks, each by min index
    int arc_at_odd(int pos) const { // pos = (i+1) mod 2n
        for (size_t a = 0; a < arcs.size(); ++a)
            if (arcs[a].entry() % two_n == pos % two_n) return static_cast<int>(a);
        throw std::logic_error("no arc with odd endpoint " + std::to_string(pos));
    }
    int arc_of_pair(int i, int j) const {
        for (size_t a = 0; a < arcs.size(); ++a)
            if (arcs[a].i == i && arcs[a].j == j) return static_cast<int>(a);
        throw std::invalid_argument("no arc for succeeding pair");
    }
};

inline ArcDiagram arc_diagram(const CncPartition& c) {
    ArcDiagram d;
    d.two_n = c.pi_w.two_n;
    for (auto [i, j] : succeeding_pairs(c.pi_w)) {
        Arc a{i, j};
        if (c.mark && c.mark->first == i && c.mark->second == j) a.marked = true;
        d.arcs.push_back(a);
    }
    if (c.mark && std::none_of(d.arcs.begin(), d.arcs.end(), [](const Arc& a) { return a.marked; }))
        throw std::invalid_argument("mark is not a succeeding pair of a white block");

    // White region per white block: bounded by the block's own arcs. Black
    // region per black block: bounded by the arcs whose odd endpoint lies
    // in the block.
    for (const auto& b : c.pi_w.blocks) {
        Region r{true, b, {}};
        for (size_t a = 0; a < d.arcs.size(); ++a)
            if (std::find(b.begin(), b.end(), d.arcs[a].i) != b.end())
                r.arc_ids.push_back(static_cast<int>(a));
        d.regions.push_back(std::move(r));
    }
    for (const auto& b : c.pi_b.blocks) {
        Region r{false, b, {}};
        for (size_t a = 0; a < d.arcs.size(); ++a)
            if (std::find(b.begin(), b.end(), d.arcs[a].entry() % d.two_n) != b.end())
                r.arc_ids.push_back(static_cast<int>(a));
        d.regions.push_back(std::move(r));
    }
    return d;
}

// All non-crossing partitions of the n white indices {0,2,...,2n-2} in
// lexicographic order of their restricted growth strings. Backtracking
// with a crossing check at each placement; the exhaustive-filter oracle in
// the test suite double-checks the enumeration.
inline std::vector<NcPartition> enumerate_ncw(int n) {
    if (n < 1) throw std::invalid_argument("enumerate needs n >= 1");
    std::vector<NcPartition> out;
    std::vector<int> rgs(n, 0);
    std::vector<Block> blocks;

    auto emit = [&]() {
        NcPartition p{2 * n, true, blocks};
        p.canonicalize();
        out.push_back(std::move(p));
    };

    // rgs[k] = block id of white index 2k; block ids appear in first-use order.
    auto rec = [&](auto&& self, int k, int used) -> void {
        if (k == n) { emit(); return; }
        for (int b = 0; b <= used; ++b) {
            blocks.resize(std::max<size_t>(blocks.size(), b + 1));
            blocks[b].push_back(2 * k);
            bool ok = true;
            for (int o = 0; o < used + (b == used ? 1 : 0) && ok; ++o)
                if (o != b && blocks_cross(blocks[b], blocks[o])) ok = false;
            if (ok) {
                rgs[k] = b;
                self(self, k + 1, std::max(used, b + 1));
            }
            blocks[b].pop_back();
            if (blocks.back().empty()) blocks.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

// Every cnc-partition for ground size 2n; with marks requested, each one
// repeated once per admissible mark (arcs in sorted pair order).
inline std::vector<CncPartition> enumerate_cnc(int n, bool with_marks = false) {
    std::vector<CncPartition> out;
    for (auto& pw : enumerate_ncw(n)) {
        if (!with_marks) {
            out.push_back(make_cnc(pw));
            continue;
        }
        for (auto pair : succeeding_pairs(pw))
            out.push_back(make_cnc(pw, pair));
    }
    return out;
}

}  // namespace unmate
