#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace unmate {

// The level-1 complex: the planar embedded graph f^-1(C) with covering
// labels. Vertices carry the index of their image postcritical point,
// edges the index of the 0-edge they cover, and each vertex a
// counterclockwise rotation of its incident edge-ends. Faces (1-tiles) and
// their checkerboard colors are derived, never stored.

struct parse_error : std::runtime_error {
    int line;
    parse_error(int ln, const std::string& msg)
        : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

struct End {
    int edge = -1;
    bool head = false;
    bool operator==(const End& o) const { return edge == o.edge && head == o.head; }
};

struct Dart {
    int edge = -1;
    bool forward = true;
    int key() const { return edge * 2 + (forward ? 0 : 1); }
    bool operator==(const Dart& o) const { return edge == o.edge && forward == o.forward; }
};

struct Face {
    int id = -1;
    int coherence = 0;  // +1 all edges forward (white), -1 all backward (black)
    bool white = false;
    std::vector<Dart> boundary;
};

struct ValidationReport {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
    std::string str() const {
        if (ok()) return "pass\n";
        std::string s;
        for (const auto& i : issues) s += "fail: " + i + "\n";
        return s;
    }
};

struct Skeleton {
    struct Vertex {
        std::string id;
        int image = -1;
        int post = -1;  // -1 when not a postcritical point
    };
    struct Edge {
        std::string id;
        int type = -1;
        int tail = -1, head = -1;
    };

    std::string name;
    int degree = 0;
    int k = 0;
    std::vector<std::string> post_labels;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<std::vector<End>> rot;  // as stored in the file
    std::map<std::string, int> vindex, eindex;

    // Derived by validate(); outside code treats the skeleton as immutable
    // afterwards.
    bool validated = false;
    std::vector<Face> faces;
    std::vector<int> norm_shift;
    std::vector<std::vector<End>> nrot;            // rotation starting at a tail-end
    std::vector<std::vector<int>> face_at_sector;  // [v][i]: face between nrot[i], nrot[i+1]
    std::vector<int> post_vertex;                  // post index -> vertex
    std::vector<int> tail_pos, head_pos;           // per edge: end position in nrot

    int valence(int v) const { return static_cast<int>(rot[v].size()); }
    int deg_f(int v) const { return valence(v) / 2; }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int end_vertex(const End& e) const { return e.head ? edges[e.edge].head : edges[e.edge].tail; }

    int vertex_of(const std::string& id) const {
        auto it = vindex.find(id);
        if (it == vindex.end()) throw std::invalid_argument("unknown vertex id: " + id);
        return it->second;
    }

    const std::string& post_label(int j) const { return post_labels.at(j); }
};

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

inline int parse_int(const std::string& s, int line) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::logic_error&) {
        throw parse_error(line, "expected integer, got '" + s + "'");
    }
}

inline std::string expect_kv(const std::string& tok, const std::string& key, int line) {
    if (tok.rfind(key + "=", 0) != 0)
        throw parse_error(line, "expected " + key + "=..., got '" + tok + "'");
    return tok.substr(key.size() + 1);
}

}  // namespace detail

// Syntactic parsing only; all structural invariants are left to validate().
inline Skeleton parse_skeleton(const std::string& text) {
    Skeleton s;
    std::istringstream in(text);
    std::string raw;
    int ln = 0;
    bool saw_map = false, saw_degree = false, saw_post = false;
    std::vector<std::pair<int, std::vector<std::string>>> rot_lines;

    while (std::getline(in, raw)) {
        ++ln;
        std::string line = raw.substr(0, raw.find('#'));
        auto tok = detail::tokens(line);
        if (tok.empty()) continue;
        const std::string& kw = tok[0];
        if (kw == "map") {
            if (tok.size() != 2) throw parse_error(ln, "usage: map <name>");
            s.name = tok[1];
            saw_map = true;
        } else if (kw == "degree") {
            if (tok.size() != 2) throw parse_error(ln, "usage: degree <d>");
            s.degree = detail::parse_int(tok[1], ln);
            saw_degree = true;
        } else if (kw == "post") {
            if (tok.size() != 2) throw parse_error(ln, "usage: post <k>");
            s.k = detail::parse_int(tok[1], ln);
            s.post_labels.assign(s.k, "");
            saw_post = true;
        } else if (kw == "postlabel") {
            if (tok.size() != 3) throw parse_error(ln, "usage: postlabel <j> <name>");
            int j = detail::parse_int(tok[1], ln);
            if (!saw_post || j < 0 || j >= s.k) throw parse_error(ln, "postlabel index out of range");
            s.post_labels[j] = tok[2];
        } else if (kw == "vertex") {
            if (tok.size() < 3 || tok.size() > 4) throw parse_error(ln, "usage: vertex <vid> image=<j> [post=<j>]");
            Skeleton::Vertex v;
            v.id = tok[1];
            if (s.vindex.count(v.id)) throw parse_error(ln, "duplicate vertex id '" + v.id + "'");
            v.image = detail::parse_int(detail::expect_kv(tok[2], "image", ln), ln);
            if (tok.size() == 4) v.post = detail::parse_int(detail::expect_kv(tok[3], "post", ln), ln);
            s.vindex[v.id] = static_cast<int>(s.vertices.size());
            s.vertices.push_back(std::move(v));
        } else if (kw == "edge") {
            if (tok.size() != 5) throw parse_error(ln, "usage: edge <eid> type=<j> tail=<vid> head=<vid>");
            Skeleton::Edge e;
            e.id = tok[1];
            if (s.eindex.count(e.id)) throw parse_error(ln, "duplicate edge id '" + e.id + "'");
            e.type = detail::parse_int(detail::expect_kv(tok[2], "type", ln), ln);
            std::string tail = detail::expect_kv(tok[3], "tail", ln);
            std::string head = detail::expect_kv(tok[4], "head", ln);
            if (!s.vindex.count(tail)) throw parse_error(ln, "edge references unknown vertex '" + tail + "'");
            if (!s.vindex.count(head)) throw parse_error(ln, "edge references unknown vertex '" + head + "'");
            e.tail = s.vindex[tail];
            e.head = s.vindex[head];
            s.eindex[e.id] = static_cast<int>(s.edges.size());
            s.edges.push_back(std::move(e));
        } else if (kw == "rot") {
            if (tok.size() < 2) throw parse_error(ln, "usage: rot <vid> <end>...");
            rot_lines.emplace_back(ln, tok);
        } else {
            throw parse_error(ln, "unknown directive '" + kw + "'");
        }
    }
    if (!saw_map || !saw_degree || !saw_post)
        throw parse_error(ln, "missing map/degree/post header");

    s.rot.assign(s.vertices.size(), {});
    for (auto& [line, tok] : rot_lines) {
        if (!s.vindex.count(tok[1])) throw parse_error(line, "rot references unknown vertex '" + tok[1] + "'");
        int v = s.vindex[tok[1]];
        if (!s.rot[v].empty()) throw parse_error(line, "duplicate rot line for '" + tok[1] + "'");
        for (size_t i = 2; i < tok.size(); ++i) {
            const std::string& t = tok[i];
            char suffix = t.back();
            if (t.size() < 2 || (suffix != 't' && suffix != 'h'))
                throw parse_error(line, "edge-end must be <eid>t or <eid>h, got '" + t + "'");
            std::string eid = t.substr(0, t.size() - 1);
            if (!s.eindex.count(eid)) throw parse_error(line, "rot references unknown edge '" + eid + "'");
            s.rot[v].push_back(End{s.eindex[eid], suffix == 'h'});
        }
    }
    return s;
}

// Rotation-system face tracing. Walk darts keeping the face on the left:
// arriving at vertex v along end at position m, leave along position m-1.
// Requires structurally sound rotations (every incident end listed once);
// throws on corrupt rotation data.
inline std::vector<Face> trace_faces(const Skeleton& s) {
    int V = static_cast<int>(s.vertices.size());
    // raw position of each end
    std::vector<int> tpos(s.edges.size(), -1), hpos(s.edges.size(), -1);
    for (int v = 0; v < V; ++v)
        for (size_t i = 0; i < s.rot[v].size(); ++i) {
            const End& e = s.rot[v][i];
            if (e.edge < 0 || e.edge >= s.num_edges())
                throw std::runtime_error("rotation end out of range");
            int& slot = e.head ? hpos[e.edge] : tpos[e.edge];
            int owner = e.head ? s.edges[e.edge].head : s.edges[e.edge].tail;
            if (owner != v) throw std::runtime_error("rotation lists end of non-incident edge " + s.edges[e.edge].id);
            if (slot != -1) throw std::runtime_error("edge end listed twice: " + s.edges[e.edge].id);
            slot = static_cast<int>(i);
        }
    for (size_t e = 0; e < s.edges.size(); ++e)
        if (tpos[e] < 0 || hpos[e] < 0)
            throw std::runtime_error("non-closing walk: rotation data misses an end of edge " + s.edges[e].id);

    auto next = [&](Dart d) -> Dart {
        int v = d.forward ? s.edges[d.edge].head : s.edges[d.edge].tail;
        int m = d.forward ? hpos[d.edge] : tpos[d.edge];
        int sz = static_cast<int>(s.rot[v].size());
        const End& out = s.rot[v][(m - 1 + sz) % sz];
        return Dart{out.edge, !out.head};
    };

    std::vector<bool> seen(s.edges.size() * 2, false);
    std::vector<Face> faces;
    for (int e = 0; e < s.num_edges(); ++e)
        for (bool fwd : {true, false}) {
            Dart start{e, fwd};
            if (seen[start.key()]) continue;
            Face f;
            Dart d = start;
            do {
                if (seen[d.key()]) throw std::runtime_error("non-closing walk at edge " + s.edges[d.edge].id);
                seen[d.key()] = true;
                f.boundary.push_back(d);
                d = next(d);
            } while (!(d == start));
            bool all_f = std::all_of(f.boundary.begin(), f.boundary.end(), [](const Dart& x) { return x.forward; });
            bool all_b = std::all_of(f.boundary.begin(), f.boundary.end(), [](const Dart& x) { return !x.forward; });
            f.coherence = all_f ? 1 : (all_b ? -1 : 0);
            f.white = all_f;
            faces.push_back(std::move(f));
        }

    // Deterministic ids: order by the lowest directed edge on the boundary,
    // and start each boundary walk there.
    for (auto& f : faces) {
        auto mn = std::min_element(f.boundary.begin(), f.boundary.end(),
                                   [](const Dart& a, const Dart& b) { return a.key() < b.key(); });
        std::rotate(f.boundary.begin(), mn, f.boundary.end());
    }
    std::sort(faces.begin(), faces.end(),
              [](const Face& a, const Face& b) { return a.boundary[0].key() < b.boundary[0].key(); });
    for (size_t i = 0; i < faces.size(); ++i) faces[i].id = static_cast<int>(i);
    return faces;
}

// Checks every structural invariant of the level-1 complex and, on pass,
// caches faces, normalized rotations and the per-vertex sector tables.
inline ValidationReport validate(Skeleton& s) {
    ValidationReport rep;
    auto fail = [&](const std::string& m) { rep.issues.push_back(m); };

    if (s.degree < 2) fail("degree must be >= 2");
    if (s.k < 3) fail("need at least 3 postcritical points");
    if (!rep.ok()) return rep;

    int V = static_cast<int>(s.vertices.size());
    int E = s.num_edges();
    if (E != s.k * s.degree)
        fail("edge count " + std::to_string(E) + " != k*d = " + std::to_string(s.k * s.degree));
    std::vector<int> per_type(s.k, 0);
    for (const auto& e : s.edges) {
        if (e.type < 0 || e.type >= s.k) { fail("edge " + e.id + " has type out of range"); continue; }
        ++per_type[e.type];
    }
    for (int j = 0; j < s.k; ++j)
        if (per_type[j] != s.degree)
            fail("type " + std::to_string(j) + " has " + std::to_string(per_type[j]) +
                 " edges, expected d = " + std::to_string(s.degree));

    for (const auto& v : s.vertices)
        if (v.image < 0 || v.image >= s.k) fail("vertex " + v.id + " image out of range");
    for (const auto& e : s.edges) {
        if (e.type < 0 || e.type >= s.k) continue;
        if (s.vertices[e.tail].image != e.type)
            fail("edge " + e.id + ": image(tail) != type");
        if (s.vertices[e.head].image != (e.type + 1) % s.k)
            fail("edge " + e.id + ": image(head) != type+1");
    }

    s.post_vertex.assign(s.k, -1);
    for (int v = 0; v < V; ++v) {
        int p = s.vertices[v].post;
        if (p == -1) continue;
        if (p < 0 || p >= s.k) { fail("vertex " + s.vertices[v].id + " post index out of range"); continue; }
        if (s.post_vertex[p] != -1) fail("postcritical index " + std::to_string(p) + " assigned twice");
        s.post_vertex[p] = v;
    }
    for (int j = 0; j < s.k; ++j)
        if (s.post_vertex[j] == -1) fail("postcritical index " + std::to_string(j) + " unassigned");

    // rotations: each incident end exactly once
    for (int v = 0; v < V; ++v) {
        std::vector<End> want;
        for (int e = 0; e < E; ++e) {
            if (s.edges[e].tail == v) want.push_back(End{e, false});
            if (s.edges[e].head == v) want.push_back(End{e, true});
        }
        auto key = [](const End& e) { return e.edge * 2 + (e.head ? 1 : 0); };
        std::vector<int> a, b;
        for (const auto& e : want) a.push_back(key(e));
        for (const auto& e : s.rot[v]) b.push_back(key(e));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) fail("rotation of " + s.vertices[v].id + " does not list its incident ends exactly once");
    }
    if (!rep.ok()) return rep;

    long long rh = 0;
    for (int v = 0; v < V; ++v) {
        if (s.valence(v) % 2 != 0) fail("vertex " + s.vertices[v].id + " has odd valence");
        else rh += s.deg_f(v) - 1;
    }
    if (rh != 2LL * s.degree - 2)
        fail("Riemann-Hurwitz sum " + std::to_string(rh) + " != 2d-2 = " + std::to_string(2 * s.degree - 2));

    // alternation: tail-ends of type image(v) and head-ends of type
    // image(v)-1, strictly alternating around every vertex
    for (int v = 0; v < V; ++v) {
        int img = s.vertices[v].image;
        int sz = s.valence(v);
        bool ok = true;
        for (int i = 0; i < sz; ++i) {
            const End& cur = s.rot[v][i];
            const End& nxt = s.rot[v][(i + 1) % sz];
            if (cur.head == nxt.head) ok = false;
            int t = s.edges[cur.edge].type;
            if (cur.head ? (t != (img - 1 + s.k) % s.k) : (t != img)) ok = false;
        }
        if (!ok) fail("edge-end alternation violated at vertex " + s.vertices[v].id);
    }
    if (!rep.ok()) return rep;

    try {
        s.faces = trace_faces(s);
    } catch (const std::exception& ex) {
        fail(std::string("face tracing: ") + ex.what());
        return rep;
    }
    int F = static_cast<int>(s.faces.size());
    if (F != 2 * s.degree) fail("face count " + std::to_string(F) + " != 2d");
    if (V - E + F != 2)
        fail("Euler characteristic V-E+F = " + std::to_string(V - E + F) + " != 2");
    int whites = 0;
    for (const auto& f : s.faces) {
        if (f.coherence == 0) { fail("face " + std::to_string(f.id) + " mixes edge directions"); continue; }
        if (f.white) ++whites;
        if (static_cast<int>(f.boundary.size()) != s.k)
            fail("face " + std::to_string(f.id) + " boundary length != k");
        int step = f.white ? 1 : s.k - 1;
        for (size_t i = 0; i < f.boundary.size(); ++i) {
            int t0 = s.edges[f.boundary[i].edge].type;
            int t1 = s.edges[f.boundary[(i + 1) % f.boundary.size()].edge].type;
            if (t1 != (t0 + step) % s.k) {
                fail("face " + std::to_string(f.id) + " edge types not cyclic");
                break;
            }
        }
    }
    if (whites != s.degree) fail("white face count " + std::to_string(whites) + " != d");
    if (!rep.ok()) return rep;

    // normalized rotations and sector tables
    s.norm_shift.assign(V, 0);
    s.nrot.assign(V, {});
    s.tail_pos.assign(E, -1);
    s.head_pos.assign(E, -1);
    for (int v = 0; v < V; ++v) {
        int shift = s.rot[v][0].head ? 1 : 0;
        s.norm_shift[v] = shift;
        int sz = s.valence(v);
        for (int i = 0; i < sz; ++i) s.nrot[v].push_back(s.rot[v][(i + shift) % sz]);
        for (int i = 0; i < sz; ++i) {
            const End& e = s.nrot[v][i];
            (e.head ? s.head_pos : s.tail_pos)[e.edge] = i;
        }
    }

    // face at each sector: tracing assigns the face to the corner between
    // the outgoing and the arriving end
    s.face_at_sector.assign(V, {});
    for (int v = 0; v < V; ++v) s.face_at_sector[v].assign(s.valence(v), -1);
    for (const auto& f : s.faces)
        for (const auto& d : f.boundary) {
            int v = d.forward ? s.edges[d.edge].head : s.edges[d.edge].tail;
            int m = d.forward ? s.head_pos[d.edge] : s.tail_pos[d.edge];
            int sz = s.valence(v);
            s.face_at_sector[v][(m - 1 + sz) % sz] = f.id;
        }
    for (int v = 0; v < V; ++v)
        for (int i = 0; i < s.valence(v); ++i) {
            if (s.face_at_sector[v][i] == -1) { fail("sector without face (internal)"); break; }
            bool w = s.faces[s.face_at_sector[v][i]].white;
            if (w != (i % 2 == 0)) { fail("checkerboard parity broken at " + s.vertices[v].id); break; }
        }

    if (rep.ok()) s.validated = true;
    return rep;
}

struct Sector {
    int face = -1;
    End before, after;  // the bounding edge-ends, counterclockwise
};

// The 1-tiles around v, counterclockwise, index 0 white. Requires a
// validated skeleton.
inline std::vector<Sector> sectors(const Skeleton& s, int v) {
    if (!s.validated) throw std::logic_error("sectors() requires a validated skeleton");
    if (v < 0 || v >= static_cast<int>(s.vertices.size()))
        throw std::invalid_argument("unknown vertex");
    std::vector<Sector> out;
    int sz = s.valence(v);
    for (int i = 0; i < sz; ++i)
        out.push_back(Sector{s.face_at_sector[v][i], s.nrot[v][i], s.nrot[v][(i + 1) % sz]});
    return out;
}

inline std::vector<Sector> sectors(const Skeleton& s, const std::string& vid) {
    return sectors(s, s.vertex_of(vid));
}

}  // namespace unmate
