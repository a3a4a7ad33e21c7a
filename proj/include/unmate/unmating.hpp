#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "unmate/connection.hpp"
#include "unmate/rational.hpp"

namespace unmate {

// The unmating pipeline: edge-replacement matrix of a pseudo-equator,
// exact Perron-Frobenius length vector, external angles along the outline
// walk, and the white/black critical portraits. Everything is exact
// rational arithmetic.

struct EdgeMatrix {
    int k = 0;
    std::vector<std::vector<long long>> m;  // m[i][j]: type-j edges inside the deformed 0-edge i

    std::vector<long long> column_sums() const {
        std::vector<long long> out(k, 0);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) out[j] += m[i][j];
        return out;
    }
};

namespace detail {

// Walk segments between consecutive marked post passages. For an
// orientation-reversing walk the deformed 0-edge E_i runs against the
// walk, so segmentation happens along the reversed circuit.
inline std::vector<std::vector<int>> segments(const Skeleton& s, const OutlineWalk& w,
                                              Orientation o) {
    if (o == Orientation::incompatible)
        throw std::invalid_argument("walk has no valid post segmentation");
    int kd = static_cast<int>(w.steps.size());
    std::vector<int> edge_seq;
    std::vector<int> mark(s.k);
    if (o == Orientation::preserving) {
        for (const auto& st : w.steps) edge_seq.push_back(st.edge);
        for (int j = 0; j < s.k; ++j) mark[j] = w.marked_step[j];
    } else {
        for (int t = kd - 1; t >= 0; --t) edge_seq.push_back(w.steps[t].edge);
        // step t of the forward walk becomes step kd-1-t; the post passage
        // sits before the reversed edge, shift by one
        for (int j = 0; j < s.k; ++j) mark[j] = (kd - 1 - w.marked_step[j] - 1 + kd) % kd;
    }
    // rotate so that post 0's marked passage closes the circuit
    int shift = (mark[0] + 1) % kd;
    std::rotate(edge_seq.begin(), edge_seq.begin() + shift, edge_seq.end());
    for (int j = 0; j < s.k; ++j) mark[j] = (mark[j] - shift + kd) % kd;

    // segment i = deformed E_i, the stretch from post i's passage (exclusive)
    // to post i+1's passage (inclusive)
    std::vector<std::vector<int>> segs(s.k);
    for (int i = 0; i < s.k; ++i) {
        int from = (i == 0) ? 0 : mark[i] + 1;
        int to = (i == s.k - 1) ? kd - 1 : mark[i + 1];
        if (from > to) throw std::logic_error("post passages out of order in segmentation");
        for (int t = from; t <= to; ++t) segs[i].push_back(edge_seq[t]);
    }
    return segs;
}

}  // namespace detail

// m_ij = number of 1-edges of type j inside the deformed 0-edge E_i.
inline EdgeMatrix edge_matrix(const Skeleton& s, const OutlineWalk& w, Orientation o) {
    for (int j = 0; j < s.k; ++j)
        if (w.marked_step[j] < 0) throw std::invalid_argument("segmentation missing a post passage");
    EdgeMatrix M;
    M.k = s.k;
    M.m.assign(s.k, std::vector<long long>(s.k, 0));
    auto segs = detail::segments(s, w, o);
    for (int i = 0; i < s.k; ++i)
        for (int e : segs[i]) ++M.m[i][s.edges[e].type];
    return M;
}

// Exact solution of M l = d l with l > 0 and sum(l) = 1. d is known to be
// the Perron eigenvalue, so this is a pure nullspace computation; no
// spectral iteration. Primitivity is checked with the Wielandt bound
// (k-1)^2 + 1.
inline std::vector<Rat> pf_vector(const EdgeMatrix& M, int d) {
    int k = M.k;
    for (long long cs : M.column_sums())
        if (cs != d) throw std::invalid_argument("column sum != degree, corrupted matrix");

    std::vector<std::vector<bool>> reach(k, std::vector<bool>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) reach[i][j] = M.m[i][j] > 0;
    int wielandt = (k - 1) * (k - 1) + 1;
    auto boolmul = [&](const auto& A, const auto& B) {
        std::vector<std::vector<bool>> C(k, std::vector<bool>(k, false));
        for (int i = 0; i < k; ++i)
            for (int t = 0; t < k; ++t)
                if (A[i][t])
                    for (int j = 0; j < k; ++j)
                        if (B[t][j]) C[i][j] = true;
        return C;
    };
    auto pw = reach;
    for (int e = 1; e < wielandt; ++e) pw = boolmul(pw, reach);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (!pw[i][j]) throw std::invalid_argument("edge matrix is not primitive");

    // nullspace of (M - dI) by fraction-free style Gaussian elimination
    std::vector<std::vector<Rat>> A(k, std::vector<Rat>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) A[i][j] = Rat(M.m[i][j]) - (i == j ? Rat(d) : Rat(0));
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < k && row < k; ++col) {
        int p = -1;
        for (int r = row; r < k; ++r)
            if (!A[r][col].is_zero()) { p = r; break; }
        if (p == -1) continue;
        std::swap(A[p], A[row]);
        Rat lead = A[row][col];
        for (int j = 0; j < k; ++j) A[row][j] /= lead;
        for (int r = 0; r < k; ++r) {
            if (r == row || A[r][col].is_zero()) continue;
            Rat f = A[r][col];
            for (int j = 0; j < k; ++j) A[r][j] -= f * A[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (row != k - 1) throw std::invalid_argument("nullity of (M - dI) is not 1");

    int free_col = 0;
    while (std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end()) ++free_col;
    std::vector<Rat> l(k, Rat(0));
    l[free_col] = Rat(1);
    for (int r = 0; r < row; ++r) l[pivot_col[r]] = -A[r][free_col];

    Rat total(0);
    for (const auto& x : l) total += x;
    if (total.is_zero()) throw std::invalid_argument("degenerate eigenvector");
    for (auto& x : l) x /= total;
    for (const auto& x : l)
        if (!(Rat(0) < x)) throw std::invalid_argument("eigenvector not positive");
    return l;
}

// External angle of post 0: zero when p_0 is fixed, otherwise
// l(p_0,p_j)/(d-1) where p_j is the image of p_0.
inline Rat base_angle(const Skeleton& s, const std::vector<Rat>& l) {
    int j = s.vertices[s.post_vertex[0]].image;
    if (j == 0) return Rat(0);
    Rat len(0);
    for (int t = 0; t < j; ++t) len += l[t];
    return len / Rat(s.degree - 1);
}

struct AngleAssignment {
    Rat theta0;
    std::vector<Rat> edge_length;     // per type: l_j / d
    std::vector<Rat> after_step;      // cumulative angle after each walk step, mod 1
    std::vector<Rat> theta_post;      // per post index
};

// Cumulative angles along the walk; the passage angle of a step is the
// angle accumulated through its edge. The marked passage of post i lands
// exactly on theta0 + l_0 + ... + l_{i-1}.
inline AngleAssignment edge_angles(const Skeleton& s, const OutlineWalk& w,
                                   const std::vector<Rat>& l, const Rat& theta0) {
    AngleAssignment a;
    a.theta0 = theta0;
    for (int j = 0; j < s.k; ++j) a.edge_length.push_back(l[j] / Rat(s.degree));
    Rat acc = theta0;
    for (const auto& st : w.steps) {
        acc += a.edge_length[s.edges[st.edge].type];
        a.after_step.push_back(acc.mod1());
    }
    Rat total = acc - theta0;
    if (total != Rat(1)) throw std::logic_error("walk lengths do not sum to 1");
    a.theta_post.assign(s.k, Rat(0));
    for (int j = 0; j < s.k; ++j) a.theta_post[j] = a.after_step[w.marked_step[j]];
    return a;
}

// A critical portrait as extracted from a pseudo-equator: finite sets of
// exact angles, sets sorted by their minimum, angles ascending.
using AngleSet = std::vector<Rat>;

struct CriticalPortraitPair {
    int degree = 0;
    std::vector<AngleSet> white;
    std::vector<AngleSet> black;
};

namespace detail {

inline void canonicalize_sets(std::vector<AngleSet>& sets) {
    for (auto& s : sets) std::sort(s.begin(), s.end());
    std::sort(sets.begin(), sets.end(), [](const AngleSet& a, const AngleSet& b) {
        return a.front() < b.front();
    });
}

}  // namespace detail

// White sets: passage angles of the arcs of each non-trivial white block.
// Black sets: {1 - theta} over the arcs bounding each non-trivial black
// block (the arc whose odd endpoint lies in the block). Only blocks with
// at least two elements name a critical point of the polynomial.
inline CriticalPortraitPair extract_portraits(const Skeleton& s, const Connection& c,
                                              const OutlineWalk& w, const AngleAssignment& a) {
    CriticalPortraitPair out;
    out.degree = s.degree;
    auto dgs = diagrams(c);

    int V = static_cast<int>(s.vertices.size());
    // passage angle per (vertex, arc)
    std::vector<std::vector<Rat>> arc_angle(V);
    for (int v = 0; v < V; ++v) arc_angle[v].assign(dgs[v].arcs.size(), Rat(0));
    std::vector<std::vector<bool>> arc_seen(V);
    for (int v = 0; v < V; ++v) arc_seen[v].assign(dgs[v].arcs.size(), false);
    for (size_t t = 0; t < w.steps.size(); ++t) {
        const auto& st = w.steps[t];
        arc_angle[st.vertex][st.arc] = a.after_step[t];
        arc_seen[st.vertex][st.arc] = true;
    }

    for (int v = 0; v < V; ++v) {
        const ArcDiagram& d = dgs[v];
        for (const auto& reg : d.regions) {
            if (reg.indices.size() < 2) continue;
            AngleSet set;
            for (int aid : reg.arc_ids) {
                if (!arc_seen[v][aid]) throw std::logic_error("arc without passage record");
                Rat th = arc_angle[v][aid];
                set.push_back(reg.white ? th : (Rat(1) - th).mod1());
            }
            (reg.white ? out.white : out.black).push_back(std::move(set));
        }
    }
    detail::canonicalize_sets(out.white);
    detail::canonicalize_sets(out.black);
    return out;
}

// Formal edge substitution: for each type i the word of (type, sign)
// letters read off the deformed 0-edge E_i. Orientation-preserving walks
// give all-positive words, reversing ones all-negative.
struct EdgeSubstitution {
    int k = 0;
    bool preserving = true;
    std::vector<std::vector<std::pair<int, int>>> word;  // (type, +1/-1)

    EdgeMatrix abelianization() const {
        EdgeMatrix M;
        M.k = k;
        M.m.assign(k, std::vector<long long>(k, 0));
        for (int i = 0; i < k; ++i)
            for (auto [t, sg] : word[i]) ++M.m[i][t];
        return M;
    }
};

inline EdgeSubstitution substitution(const Skeleton& s, const OutlineWalk& w, Orientation o) {
    EdgeSubstitution sub;
    sub.k = s.k;
    sub.preserving = (o == Orientation::preserving);
    int sign = sub.preserving ? 1 : -1;
    auto segs = detail::segments(s, w, o);
    sub.word.resize(s.k);
    for (int i = 0; i < s.k; ++i)
        for (int e : segs[i]) sub.word[i].emplace_back(s.edges[e].type, sign);
    return sub;
}

// Substitution composition: apply a, then expand each letter by b. A
// negative letter expands to the reversed, sign-flipped word. The
// abelianization is the matrix product; reversing composed with reversing
// is preserving.
inline EdgeSubstitution compose(const EdgeSubstitution& a, const EdgeSubstitution& b) {
    if (a.k != b.k) throw std::invalid_argument("substitution arity mismatch");
    EdgeSubstitution out;
    out.k = a.k;
    out.word.resize(a.k);
    for (int i = 0; i < a.k; ++i) {
        for (auto [t, sg] : a.word[i]) {
            const auto& exp = b.word[t];
            if (sg > 0) {
                out.word[i].insert(out.word[i].end(), exp.begin(), exp.end());
            } else {
                for (auto it = exp.rbegin(); it != exp.rend(); ++it)
                    out.word[i].emplace_back(it->first, -it->second);
            }
        }
    }
    out.preserving = true;
    for (const auto& wd : out.word)
        for (auto [t, sg] : wd)
            if (sg < 0) out.preserving = false;
    return out;
}

// Convenience: the full pipeline for one preserving pseudo-equator.
struct UnmatingResult {
    Orientation orientation = Orientation::incompatible;
    std::vector<int> post_order;
    EdgeMatrix matrix;
    std::vector<Rat> lengths;
    Rat theta0;
    CriticalPortraitPair portraits;
};

inline UnmatingResult unmate_connection(const Skeleton& s, const Connection& c) {
    OutlineWalk w = outline(s, c);
    if (!w.closed) throw std::invalid_argument("connection is not a spanning-tree connection");
    UnmatingResult r;
    r.post_order = post_appearance(s, w);
    r.orientation = classify_order(r.post_order);
    r.matrix = edge_matrix(s, w, r.orientation);
    r.lengths = pf_vector(r.matrix, s.degree);
    if (r.orientation == Orientation::preserving) {
        r.theta0 = base_angle(s, r.lengths);
        AngleAssignment a = edge_angles(s, w, r.lengths, r.theta0);
        r.portraits = extract_portraits(s, c, w, a);
    }
    return r;
}

}  // namespace unmate
