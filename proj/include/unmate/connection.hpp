#pragma once

#include <future>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "unmate/ncpart.hpp"
#include "unmate/skeleton.hpp"

namespace unmate {

// A connection assigns a cnc-partition over the sector table to every
// 1-vertex, marked at the postcritical ones. Valence-2 vertices carry the
// trivial partition; connection files omit them.

struct Connection {
    std::vector<CncPartition> at;  // indexed like skeleton vertices

    std::string key(const Skeleton& s) const {
        std::string out;
        for (size_t v = 0; v < at.size(); ++v)
            out += s.vertices[v].id + " " + at[v].str() + "\n";
        return out;
    }
};

inline CncPartition trivial_cnc(int n, bool marked) {
    NcPartition pw{2 * n, true, {}};
    for (int i = 0; i < n; ++i) pw.blocks.push_back({2 * i});
    std::optional<std::pair<int, int>> mark;
    if (marked) mark = {0, 0};
    return make_cnc(std::move(pw), mark);
}

// Per-vertex arc diagrams of a connection.
inline std::vector<ArcDiagram> diagrams(const Connection& c) {
    std::vector<ArcDiagram> out;
    out.reserve(c.at.size());
    for (const auto& cnc : c.at) out.push_back(arc_diagram(cnc));
    return out;
}

// Connection file: "conn <vid> block <i> ..." lines give the non-singleton
// white blocks, "mark <vid> <i> <j>" the marked succeeding pair. White
// sector indices not listed form singletons; vertices not mentioned get
// the all-singleton partition. Marks at valence-2 postcritical vertices
// are forced and may be omitted.
inline Connection parse_connection(const std::string& text, const Skeleton& s) {
    if (!s.validated) throw std::logic_error("connection needs a validated skeleton");
    std::map<int, std::vector<Block>> explicit_blocks;
    std::map<int, std::pair<int, int>> marks;

    std::istringstream in(text);
    std::string raw;
    int ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        std::string line = raw.substr(0, raw.find('#'));
        auto tok = detail::tokens(line);
        if (tok.empty()) continue;
        if (tok[0] == "conn") {
            if (tok.size() < 4 || tok[2] != "block")
                throw parse_error(ln, "usage: conn <vid> block <i> <i> ...");
            int v = -1;
            try { v = s.vertex_of(tok[1]); }
            catch (const std::invalid_argument&) { throw parse_error(ln, "unknown vertex '" + tok[1] + "'"); }
            Block b;
            for (size_t i = 3; i < tok.size(); ++i) b.push_back(detail::parse_int(tok[i], ln));
            for (int i : b) {
                if (i < 0 || i >= s.valence(v)) throw parse_error(ln, "sector index out of range");
                if (i % 2 != 0) throw parse_error(ln, "white sector indices must be even");
            }
            std::sort(b.begin(), b.end());
            explicit_blocks[v].push_back(std::move(b));
        } else if (tok[0] == "mark") {
            if (tok.size() != 4) throw parse_error(ln, "usage: mark <vid> <i> <j>");
            int v = -1;
            try { v = s.vertex_of(tok[1]); }
            catch (const std::invalid_argument&) { throw parse_error(ln, "unknown vertex '" + tok[1] + "'"); }
            marks[v] = {detail::parse_int(tok[2], ln), detail::parse_int(tok[3], ln)};
        } else {
            throw parse_error(ln, "unknown directive '" + tok[0] + "'");
        }
    }

    Connection c;
    int V = static_cast<int>(s.vertices.size());
    for (int v = 0; v < V; ++v) {
        int n = s.deg_f(v);
        std::vector<Block> blocks = explicit_blocks.count(v) ? explicit_blocks[v] : std::vector<Block>{};
        std::vector<bool> used(2 * n, false);
        for (const auto& b : blocks)
            for (int i : b) {
                if (used[i]) throw std::invalid_argument("sector listed twice at " + s.vertices[v].id);
                used[i] = true;
            }
        for (int i = 0; i < 2 * n; i += 2)
            if (!used[i]) blocks.push_back({i});
        NcPartition pw{2 * n, true, std::move(blocks)};
        pw.canonicalize();
        if (!is_noncrossing(pw))
            throw std::invalid_argument("white blocks cross at " + s.vertices[v].id);

        std::optional<std::pair<int, int>> mark;
        bool is_post = s.vertices[v].post != -1;
        if (marks.count(v)) {
            if (!is_post) throw std::invalid_argument("mark at non-postcritical vertex " + s.vertices[v].id);
            mark = marks[v];
        } else if (is_post) {
            auto pairs = succeeding_pairs(pw);
            if (pairs.size() == 1) mark = pairs[0];
            else throw std::invalid_argument("mark required at postcritical vertex " + s.vertices[v].id);
        }
        c.at.push_back(make_cnc(std::move(pw), mark));  // throws if mark is not a succeeding pair
        if (mark) arc_diagram(c.at.back());
    }
    return c;
}

// Reparseable serialization: non-singleton blocks plus the marks at
// postcritical vertices.
inline std::string serialize_connection(const Skeleton& s, const Connection& c) {
    std::string out;
    for (size_t v = 0; v < c.at.size(); ++v) {
        for (const auto& b : c.at[v].pi_w.blocks) {
            if (b.size() < 2) continue;
            out += "conn " + s.vertices[v].id + " block";
            for (int i : b) out += " " + std::to_string(i);
            out += "\n";
        }
        if (s.vertices[v].post != -1 && c.at[v].mark)
            out += "mark " + s.vertices[v].id + " " + std::to_string(c.at[v].mark->first) +
                   " " + std::to_string(c.at[v].mark->second) + "\n";
    }
    return out;
}

// Bipartite incidence graph of white 1-tiles and white blocks.
struct WhiteGraph {
    int tile_nodes = 0;
    int block_nodes = 0;
    std::vector<std::pair<int, int>> edges;  // (white-face rank, block node)
};

inline WhiteGraph white_graph(const Skeleton& s, const Connection& c) {
    if (!s.validated) throw std::logic_error("white_graph needs a validated skeleton");
    WhiteGraph g;
    std::vector<int> white_rank(s.faces.size(), -1);
    for (const auto& f : s.faces)
        if (f.white) white_rank[f.id] = g.tile_nodes++;

    for (size_t v = 0; v < c.at.size(); ++v) {
        for (const auto& b : c.at[v].pi_w.blocks) {
            int node = g.block_nodes++;
            for (int i : b) {
                if (i < 0 || i >= s.valence(v))
                    throw std::invalid_argument("sector index out of range at " + s.vertices[v].id);
                g.edges.emplace_back(white_rank[s.face_at_sector[v][i]], node);
            }
        }
    }
    return g;
}

inline bool is_spanning_tree(const WhiteGraph& g) {
    int n = g.tile_nodes + g.block_nodes;
    if (static_cast<int>(g.edges.size()) != n - 1) return false;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    int comps = n;
    for (auto [t, b] : g.edges) {
        int x = find(t), y = find(g.tile_nodes + b);
        if (x == y) return false;  // cycle
        parent[x] = y;
        --comps;
    }
    return comps == 1;
}

// One passage of the outline walk: the 1-edge just traversed (forward) and
// the arc through which the walk leaves the arrival vertex.
struct WalkStep {
    int edge = -1;
    int vertex = -1;  // head of the edge
    int arc = -1;     // index into the vertex's arc diagram
};

struct OutlineWalk {
    std::vector<WalkStep> steps;   // step 0 starts at the marked arc of post 0
    bool closed = false;
    std::vector<int> marked_step;  // per post index, position of its marked passage
};

// Boundary circuit of the white component. Travel a 1-edge forward, enter
// the arrival vertex's diagram through the sector just crossed, follow its
// arc, exit along the white-block successor. Closes over all k*d edges
// exactly when the white connection graph is a spanning tree.
inline OutlineWalk outline(const Skeleton& s, const Connection& c,
                           const std::vector<ArcDiagram>* dgs = nullptr) {
    if (!s.validated) throw std::logic_error("outline needs a validated skeleton");
    std::vector<ArcDiagram> local;
    if (!dgs) { local = diagrams(c); dgs = &local; }

    OutlineWalk w;
    w.marked_step.assign(s.k, -1);

    int p0 = s.post_vertex[0];
    if (!c.at[p0].mark) throw std::invalid_argument("post 0 carries no mark");
    int start_edge = s.nrot[p0][c.at[p0].mark->second].edge;

    int kd = s.num_edges();
    std::vector<bool> used(kd, false);
    int e = start_edge;
    for (int step = 0; step < kd; ++step) {
        if (used[e]) return w;  // premature revisit, not a tree
        used[e] = true;
        int v = s.edges[e].head;
        int m = s.head_pos[e];
        int i = (m - 1 + s.valence(v)) % s.valence(v);
        const ArcDiagram& d = (*dgs)[v];
        int arc = d.arc_at_odd(m);
        w.steps.push_back(WalkStep{e, v, arc});
        if (c.at[v].mark && s.vertices[v].post != -1 &&
            d.arcs[arc].i == c.at[v].mark->first && d.arcs[arc].j == c.at[v].mark->second)
            w.marked_step[s.vertices[v].post] = step;
        int j = c.at[v].pi_w.successor(i);
        e = s.nrot[v][j].edge;
        if (e == start_edge && step + 1 < kd) return w;  // closed early
    }
    w.closed = (e == start_edge);
    return w;
}

enum class Orientation { preserving, reversing, incompatible };

inline const char* to_string(Orientation o) {
    switch (o) {
        case Orientation::preserving: return "preserving";
        case Orientation::reversing: return "reversing";
        default: return "incompatible";
    }
}

// Cyclic order of the marked postcritical passages along the walk,
// starting with post 0 (whose marked passage closes the circuit).
inline std::vector<int> post_appearance(const Skeleton& s, const OutlineWalk& w) {
    std::vector<std::pair<int, int>> bystep;  // (step, post)
    for (int j = 0; j < s.k; ++j) {
        if (w.marked_step[j] < 0) throw std::logic_error("post passage missing from walk");
        bystep.emplace_back(w.marked_step[j], j);
    }
    std::sort(bystep.begin(), bystep.end());
    std::vector<int> order;
    for (auto& [st, j] : bystep) order.push_back(j);
    std::rotate(order.begin(), std::find(order.begin(), order.end(), 0), order.end());
    return order;
}

inline Orientation classify_order(const std::vector<int>& order) {
    int k = static_cast<int>(order.size());
    bool fwd = true, rev = true;
    for (int i = 0; i < k; ++i) {
        if (order[i] != i) fwd = false;
        if (order[i] != (k - i) % k) rev = false;
    }
    if (fwd) return Orientation::preserving;
    if (rev) return Orientation::reversing;
    return Orientation::incompatible;
}

// For k = 3 the cyclic-order test decides the isotopy class exactly; for
// k >= 4 "preserving" only certifies the necessary condition and results
// carry exact_isotopy = false.
inline Orientation classify(const Skeleton& s, const OutlineWalk& w) {
    return classify_order(post_appearance(s, w));
}

struct PseudoEquator {
    Connection conn;
    OutlineWalk walk;
    Orientation orientation = Orientation::incompatible;
    std::vector<int> post_order;
    bool exact_isotopy = true;  // false for k >= 4
    std::string key;
};

enum class SearchMode { preserving, reversing, all };

// Number of spanning-tree connections (markings not enumerated).
inline long long count_tree_connections(const Skeleton& s) {
    if (!s.validated) throw std::logic_error("needs a validated skeleton");
    int V = static_cast<int>(s.vertices.size());
    std::vector<int> crit;
    for (int v = 0; v < V; ++v)
        if (s.deg_f(v) >= 2) crit.push_back(v);
    std::vector<std::vector<NcPartition>> options;
    for (int v : crit) options.push_back(enumerate_ncw(s.deg_f(v)));
    long long jobs = 1;
    for (const auto& o : options) jobs *= static_cast<long long>(o.size());
    long long trees = 0;
    for (long long idx = 0; idx < jobs; ++idx) {
        Connection c;
        long long rest = idx;
        std::map<int, NcPartition> chosen;
        for (size_t t = 0; t < crit.size(); ++t) {
            chosen[crit[t]] = options[t][rest % options[t].size()];
            rest /= options[t].size();
        }
        for (int v = 0; v < V; ++v)
            c.at.push_back(chosen.count(v) ? make_cnc(chosen[v]) : trivial_cnc(s.deg_f(v), false));
        if (is_spanning_tree(white_graph(s, c))) ++trees;
    }
    return trees;
}

inline unsigned search_threads_from_env(unsigned fallback = 1) {
    if (const char* env = std::getenv("UNMATE_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return fallback;
}

// Exhaustive pseudo-equator search: the product of all cnc-partitions over
// the critical vertices and all markings at the postcritical ones,
// filtered by the spanning-tree test, then classified. Results come back
// in canonical order (lexicographic in the serialized connection),
// independent of the parallelism width.
inline std::vector<PseudoEquator> search(const Skeleton& s, SearchMode mode, unsigned threads = 1) {
    if (!s.validated) throw std::logic_error("search needs a validated skeleton");
    int V = static_cast<int>(s.vertices.size());

    std::vector<int> crit;
    for (int v = 0; v < V; ++v)
        if (s.deg_f(v) >= 2) crit.push_back(v);
    std::vector<std::vector<NcPartition>> options;
    for (int v : crit) options.push_back(enumerate_ncw(s.deg_f(v)));

    long long jobs = 1;
    for (const auto& o : options) jobs *= static_cast<long long>(o.size());

    auto run_job = [&](long long idx) {
        std::vector<PseudoEquator> found;
        Connection c;
        c.at.reserve(V);
        long long rest = idx;
        std::map<int, NcPartition> chosen;
        for (size_t t = 0; t < crit.size(); ++t) {
            chosen[crit[t]] = options[t][rest % options[t].size()];
            rest /= options[t].size();
        }
        for (int v = 0; v < V; ++v) {
            if (chosen.count(v)) c.at.push_back(make_cnc(chosen[v]));
            else c.at.push_back(trivial_cnc(s.deg_f(v), false));
        }
        if (!is_spanning_tree(white_graph(s, c))) return found;

        // enumerate markings over the postcritical vertices
        std::vector<int> posts(s.post_vertex);
        std::vector<std::vector<std::pair<int, int>>> arcs;
        for (int p : posts) arcs.push_back(succeeding_pairs(c.at[p].pi_w));
        std::vector<size_t> pick(posts.size(), 0);
        while (true) {
            Connection m = c;
            for (size_t t = 0; t < posts.size(); ++t)
                m.at[posts[t]].mark = arcs[t][pick[t]];
            auto dgs = diagrams(m);
            OutlineWalk w = outline(s, m, &dgs);
            if (!w.closed) throw std::logic_error("tree connection with non-closing walk");
            auto order = post_appearance(s, w);
            Orientation o = classify_order(order);
            bool want = (mode == SearchMode::all && o != Orientation::incompatible) ||
                        (mode == SearchMode::preserving && o == Orientation::preserving) ||
                        (mode == SearchMode::reversing && o == Orientation::reversing);
            if (want) {
                PseudoEquator pe;
                pe.conn = m;
                pe.walk = std::move(w);
                pe.orientation = o;
                pe.post_order = order;
                pe.exact_isotopy = (s.k <= 3);
                pe.key = m.key(s);
                found.push_back(std::move(pe));
            }
            size_t t = 0;
            while (t < pick.size() && ++pick[t] == arcs[t].size()) pick[t++] = 0;
            if (t == pick.size()) break;
        }
        return found;
    };

    std::vector<PseudoEquator> all;
    if (threads <= 1) {
        for (long long i = 0; i < jobs; ++i) {
            auto part = run_job(i);
            all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
        }
    } else {
        long long chunk = (jobs + threads - 1) / threads;
        std::vector<std::future<std::vector<PseudoEquator>>> futs;
        for (unsigned t = 0; t < threads; ++t) {
            long long lo = t * chunk, hi = std::min<long long>(jobs, lo + chunk);
            futs.push_back(std::async(std::launch::async, [&, lo, hi]() {
                std::vector<PseudoEquator> part;
                for (long long i = lo; i < hi; ++i) {
                    auto r = run_job(i);
                    part.insert(part.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
                }
                return part;
            }));
        }
        for (auto& f : futs) {
            auto part = f.get();
            all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
        }
    }
    std::sort(all.begin(), all.end(),
              [](const PseudoEquator& a, const PseudoEquator& b) { return a.key < b.key; });
    return all;
}

}  // namespace unmate
