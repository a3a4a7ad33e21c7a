#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "unmate/ncpart.hpp"

using namespace unmate;

namespace {

// Exhaustive-filter oracle: every set partition of the evens via
// restricted growth strings, kept when the crossing test passes.
std::vector<std::vector<Block>> oracle_nc_partitions(int n) {
    std::vector<std::vector<Block>> out;
    std::vector<int> rgs(n, 0);
    auto emit = [&]() {
        int blocks = 0;
        for (int x : rgs) blocks = std::max(blocks, x + 1);
        std::vector<Block> p(blocks);
        for (int i = 0; i < n; ++i) p[rgs[i]].push_back(2 * i);
        if (is_noncrossing(p)) out.push_back(p);
    };
    auto rec = [&](auto&& self, int k, int mx) -> void {
        if (k == n) { emit(); return; }
        for (int b = 0; b <= mx + 1; ++b) {
            rgs[k] = b;
            self(self, k + 1, std::max(mx, b));
        }
    };
    rec(rec, 0, -1);
    return out;
}

// Brute-force maximal complement: the coarsest partition of the odds whose
// union with pi_w is non-crossing, found by greedy merging with the test
// the spec names.
bool merge_would_cross(const NcPartition& pi_w, const NcPartition& pi_b, size_t i, size_t j) {
    Block merged = pi_b.blocks[i];
    merged.insert(merged.end(), pi_b.blocks[j].begin(), pi_b.blocks[j].end());
    std::sort(merged.begin(), merged.end());
    if (blocks_cross(merged, merged)) return true;
    for (const auto& b : pi_w.blocks)
        if (blocks_cross(merged, b)) return true;
    for (size_t t = 0; t < pi_b.blocks.size(); ++t)
        if (t != i && t != j && blocks_cross(merged, pi_b.blocks[t])) return true;
    return false;
}

std::string key_of(const NcPartition& p) {
    NcPartition q = p;
    q.canonicalize();
    return q.str();
}

}  // namespace

TEST_CASE("crossing test on the worked example") {
    CHECK(is_noncrossing({{0, 4, 6}, {2}}));
    CHECK_FALSE(is_noncrossing({{0, 4}, {2, 6}}));
    CHECK(is_noncrossing({{0}, {2}, {4}, {6}}));
}

TEST_CASE("complement matches the worked example and the brute-force maximality oracle") {
    NcPartition pw{8, true, {{0, 4, 6}, {2}}};
    NcPartition pb = complement(pw);
    CHECK(pb.str() == "{1,3},{5},{7}");

    // all-singleton whites on 2n=6 -> single black block
    NcPartition singles{6, true, {{0}, {2}, {4}}};
    CHECK(complement(singles).str() == "{1,3,5}");
    // single white block -> all-singleton blacks
    NcPartition full{6, true, {{0, 2, 4}}};
    CHECK(complement(full).str() == "{1},{3},{5}");

    // maximality by the merge test for every pi_w with n <= 5
    for (int n = 1; n <= 5; ++n)
        for (const auto& pw_blocks : oracle_nc_partitions(n)) {
            NcPartition w{2 * n, true, pw_blocks};
            NcPartition b = complement(w);
            // the union must be non-crossing
            std::vector<Block> all = w.blocks;
            all.insert(all.end(), b.blocks.begin(), b.blocks.end());
            REQUIRE(is_noncrossing(all));
            // merging any two black blocks must create a crossing
            for (size_t i = 0; i < b.blocks.size(); ++i)
                for (size_t j = i + 1; j < b.blocks.size(); ++j)
                    REQUIRE(merge_would_cross(w, b, i, j));
        }
}

TEST_CASE("block count identity and enumeration counts against the oracle") {
    const long long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429};
    for (int n = 1; n <= 7; ++n) {
        auto mine = enumerate_ncw(n);
        auto oracle = oracle_nc_partitions(n);
        REQUIRE(static_cast<long long>(mine.size()) == catalan[n]);
        REQUIRE(mine.size() == oracle.size());
        std::set<std::string> a, b;
        for (const auto& p : mine) a.insert(key_of(p));
        for (const auto& p : oracle) b.insert(key_of(NcPartition{2 * n, true, p}));
        REQUIRE(a == b);
        if (n <= 6)
            for (const auto& pw : mine) {
                CncPartition c = make_cnc(pw);
                REQUIRE(c.pi_w.blocks.size() + c.pi_b.blocks.size() == static_cast<size_t>(n + 1));
            }
    }
}

TEST_CASE("complement is antitone: refining whites coarsens blacks") {
    auto refines = [](const NcPartition& a, const NcPartition& b) {
        // every block of a is contained in a block of b
        for (const auto& ba : a.blocks) {
            const Block* host = b.block_of(ba.front());
            if (!host) return false;
            for (int x : ba)
                if (std::find(host->begin(), host->end(), x) == host->end()) return false;
        }
        return true;
    };
    for (int n = 2; n <= 5; ++n) {
        auto all = enumerate_ncw(n);
        for (const auto& p : all)
            for (const auto& q : all)
                if (refines(p, q))
                    REQUIRE(refines(complement(q), complement(p)));
    }
}

TEST_CASE("arc diagram of the worked example") {
    CncPartition c = make_cnc(NcPartition{8, true, {{0, 4, 6}, {2}}});
    ArcDiagram d = arc_diagram(c);
    REQUIRE(d.arcs.size() == 4);
    REQUIRE(d.regions.size() == 5);
    std::vector<size_t> white_arc_counts;
    for (const auto& r : d.regions)
        if (r.white) white_arc_counts.push_back(r.arc_ids.size());
    std::sort(white_arc_counts.begin(), white_arc_counts.end());
    CHECK(white_arc_counts == std::vector<size_t>{1, 3});

    // singleton block {2}: its arc joins positions 3 and 2
    int a = d.arc_of_pair(2, 2);
    CHECK(d.arcs[a].entry() == 3);
    CHECK(d.arcs[a].j == 2);
}

TEST_CASE("full white block has one white region bounded by all arcs") {
    CncPartition c = make_cnc(NcPartition{6, true, {{0, 2, 4}}});
    ArcDiagram d = arc_diagram(c);
    int whites = 0;
    for (const auto& r : d.regions)
        if (r.white) {
            ++whites;
            CHECK(r.arc_ids.size() == 3);
        }
    CHECK(whites == 1);
}

TEST_CASE("region structure: one region per block, |b| arcs each, n <= 6") {
    for (int n = 1; n <= 6; ++n)
        for (const auto& pw : enumerate_ncw(n)) {
            CncPartition c = make_cnc(pw);
            ArcDiagram d = arc_diagram(c);
            REQUIRE(d.arcs.size() == static_cast<size_t>(n));
            REQUIRE(d.regions.size() == c.pi_w.blocks.size() + c.pi_b.blocks.size());
            size_t wi = 0, bi = 0;
            for (const auto& r : d.regions) {
                const auto& blocks = r.white ? c.pi_w.blocks : c.pi_b.blocks;
                size_t& idx = r.white ? wi : bi;
                REQUIRE(r.indices == blocks[idx]);
                REQUIRE(r.arc_ids.size() == r.indices.size());
                ++idx;
            }
            // every circle position carries exactly one arc endpoint
            std::vector<int> hits(2 * n, 0);
            for (const auto& a : d.arcs) {
                ++hits[a.entry() % (2 * n)];
                ++hits[a.j];
            }
            for (int h : hits) REQUIRE(h == 1);
        }
}

TEST_CASE("marked enumeration yields one cnc per admissible mark") {
    auto plain = enumerate_cnc(3, false);
    auto marked = enumerate_cnc(3, true);
    CHECK(plain.size() == 5);
    // every partition of n=3 has exactly 3 arcs
    CHECK(marked.size() == 15);
    for (const auto& c : marked) {
        REQUIRE(c.mark.has_value());
        ArcDiagram d = arc_diagram(c);
        int flagged = 0;
        for (const auto& a : d.arcs) flagged += a.marked;
        REQUIRE(flagged == 1);
    }
    CHECK(enumerate_cnc(1, false).size() == 1);
    CHECK(enumerate_cnc(4, false).size() == 14);
}

TEST_CASE("malformed partitions are rejected") {
    CHECK_THROWS_AS(make_cnc(NcPartition{8, true, {{0, 4}, {2, 6}}}), std::invalid_argument);
    CHECK_THROWS_AS(make_cnc(NcPartition{6, true, {{0, 2, 4}}}, std::pair<int, int>{0, 4}),
                    std::invalid_argument);
}
