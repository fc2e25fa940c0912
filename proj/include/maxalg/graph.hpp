#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "maxalg/matrix.hpp"
#include "maxalg/root.hpp"

namespace maxalg {

// Digraph view of a square matrix: an edge i -> j of weight a_ij whenever
// a_ij > 0.
template <class S>
std::vector<std::vector<std::size_t>> adjacency(const Mat<S>& a) {
    if (!a.is_square()) throw shape_error("adjacency: non-square input");
    std::vector<std::vector<std::size_t>> adj(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) adj[i].push_back(j);
    return adj;
}

struct SccDecomposition {
    std::vector<std::size_t> comp;                  // vertex -> component id
    std::vector<std::vector<std::size_t>> members;  // in topological order
    std::size_t count() const { return members.size(); }
};

namespace detail {

// Iterative Tarjan. Components are emitted in reverse topological order of
// the condensation and re-labelled so that every condensation edge goes from
// a smaller id to a larger one.
inline SccDecomposition tarjan(const std::vector<std::vector<std::size_t>>& adj) {
    const std::size_t n = adj.size();
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, none), low(n, 0), comp(n, none);
    std::vector<std::size_t> stack;
    std::vector<bool> on_stack(n, false);
    std::vector<std::vector<std::size_t>> popped;
    std::size_t counter = 0;

    struct Frame {
        std::size_t v;
        std::size_t edge;
    };
    std::vector<Frame> frames;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != none) continue;
        frames.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < adj[f.v].size()) {
                const std::size_t w = adj[f.v][f.edge++];
                if (index[w] == none) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                const std::size_t v = f.v;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == index[v]) {
                    std::vector<std::size_t> members;
                    std::size_t w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        members.push_back(w);
                    } while (w != v);
                    std::sort(members.begin(), members.end());
                    popped.push_back(std::move(members));
                }
            }
        }
    }
    SccDecomposition r;
    r.comp.assign(n, 0);
    r.members.assign(popped.rbegin(), popped.rend());
    for (std::size_t c = 0; c < r.members.size(); ++c)
        for (std::size_t v : r.members[c]) r.comp[v] = c;
    return r;
}

}  // namespace detail

template <class S>
SccDecomposition scc_decompose(const Mat<S>& a) {
    return detail::tarjan(adjacency(a));
}

// A 1x1 matrix counts as irreducible regardless of its entry.
template <class S>
bool is_irreducible(const Mat<S>& a) {
    return scc_decompose(a).count() == 1;
}

template <class S>
struct FnfForm {
    Perm sigma;                            // permute_similarity(a, sigma) is block upper triangular
    std::vector<std::size_t> block_start;  // size count+1
    Mat<S> permuted;
    std::vector<std::vector<bool>> access;  // access[i][j]: class i reaches class j

    std::size_t block_count() const { return block_start.size() - 1; }
    Mat<S> block(std::size_t c) const {
        const std::size_t b = block_start[c], e = block_start[c + 1];
        Mat<S> m(e - b, e - b);
        for (std::size_t i = b; i < e; ++i)
            for (std::size_t j = b; j < e; ++j) m(i - b, j - b) = permuted(i, j);
        return m;
    }
};

template <class S>
FnfForm<S> frobenius_normal_form(const Mat<S>& a) {
    const SccDecomposition scc = scc_decompose(a);
    FnfForm<S> f;
    std::vector<std::size_t> order;
    f.block_start.push_back(0);
    for (const auto& members : scc.members) {
        order.insert(order.end(), members.begin(), members.end());
        f.block_start.push_back(order.size());
    }
    f.sigma = Perm(std::move(order));
    f.permuted = permute_similarity(a, f.sigma);
    const std::size_t t = scc.count();
    f.access.assign(t, std::vector<bool>(t, false));
    for (std::size_t c = 0; c < t; ++c) f.access[c][c] = true;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) f.access[scc.comp[i]][scc.comp[j]] = true;
    // transitive closure over the condensation (classes already topological)
    for (std::size_t k = 0; k < t; ++k)
        for (std::size_t i = 0; i < t; ++i)
            if (f.access[i][k])
                for (std::size_t j = 0; j < t; ++j)
                    if (f.access[k][j]) f.access[i][j] = true;
    return f;
}

// Cycle mean w(C)^(1/|C|) with an optional witness cycle; an empty witness
// together with value 0 means the digraph is acyclic.
template <class S>
struct CycleMean {
    Root<S> value;
    std::vector<std::size_t> cycle;  // v0 -> v1 -> ... -> v0
};

namespace detail {

template <class S>
Mat<S> submatrix(const Mat<S>& a, const std::vector<std::size_t>& verts) {
    Mat<S> sub(verts.size(), verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = 0; j < verts.size(); ++j)
            sub(i, j) = a(verts[i], verts[j]);
    return sub;
}

// Karp recurrence on walk weights inside one strongly connected block:
// mu = max_v min_k (D_h(v)/D_k(v))^(1/(h-k)), products in place of sums.
// Zero D-entries mean "no walk" and are skipped.
template <class S>
std::optional<Root<S>> karp_scc(const Mat<S>& sub) {
    const std::size_t h = sub.rows();
    std::vector<std::vector<S>> d(h + 1, std::vector<S>(h));
    d[0][0] = S(1);  // source: first vertex of the block
    for (std::size_t k = 1; k <= h; ++k)
        for (std::size_t u = 0; u < h; ++u) {
            if (d[k - 1][u].is_zero()) continue;
            for (std::size_t v = 0; v < h; ++v) {
                if (sub(u, v).is_zero()) continue;
                S w = d[k - 1][u] * sub(u, v);
                if (d[k][v].cmp(w) < 0) d[k][v] = std::move(w);
            }
        }
    std::optional<Root<S>> best;
    for (std::size_t v = 0; v < h; ++v) {
        if (d[h][v].is_zero()) continue;
        std::optional<Root<S>> inner;
        for (std::size_t k = 0; k < h; ++k) {
            if (d[k][v].is_zero()) continue;
            Root<S> q(d[h][v] / d[k][v], h - k);
            if (!inner || q.cmp(*inner) < 0) inner = std::move(q);
        }
        if (inner && (!best || best->cmp(*inner) < 0)) best = std::move(inner);
    }
    return best;
}

// Extract a simple cycle of mean exactly mu from a strongly connected block
// known to attain it. Unrolls an optimal closed walk through the power
// matrices, then strips the first simple cycle, which must have mean mu.
template <class S>
std::vector<std::size_t> critical_cycle(const Mat<S>& sub, const Root<S>& mu) {
    const std::size_t h = sub.rows();
    std::vector<Mat<S>> pow;
    pow.push_back(Mat<S>::identity(h));
    for (std::size_t k = 1; k <= h; ++k) pow.push_back(otimes(pow.back(), sub));

    auto closes_at = [&](const S& walk_weight, std::size_t len) {
        // walk_weight == mu^len, decided by cross-powering
        return walk_weight.pow_ui(mu.deg).cmp(mu.base.pow_ui(len)) == 0;
    };
    for (std::size_t len = 1; len <= h; ++len)
        for (std::size_t i = 0; i < h; ++i) {
            if (pow[len](i, i).is_zero() || !closes_at(pow[len](i, i), len)) continue;
            // unroll the optimal closed walk of that length through i
            std::vector<std::size_t> walk{i};
            std::size_t u = i;
            for (std::size_t r = len; r > 1; --r) {
                for (std::size_t j = 0; j < h; ++j) {
                    if (sub(u, j).is_zero() || pow[r - 1](j, i).is_zero()) continue;
                    if ((sub(u, j) * pow[r - 1](j, i)) == pow[r](u, i)) {
                        walk.push_back(j);
                        u = j;
                        break;
                    }
                }
            }
            walk.push_back(i);
            // first repeated vertex bounds a simple cycle; its mean is mu
            std::vector<std::size_t> seen(h, static_cast<std::size_t>(-1));
            for (std::size_t q = 0; q < walk.size(); ++q) {
                if (seen[walk[q]] != static_cast<std::size_t>(-1)) {
                    const std::size_t p = seen[walk[q]];
                    std::vector<std::size_t> cyc(walk.begin() + p, walk.begin() + q);
                    S w(1);
                    for (std::size_t t = 0; t < cyc.size(); ++t)
                        w = w * sub(cyc[t], cyc[(t + 1) % cyc.size()]);
                    if (Root<S>(w, cyc.size()).cmp(mu) == 0) return cyc;
                    break;
                }
                seen[walk[q]] = q;
            }
        }
    throw error("critical_cycle: no witness found (internal)");
}

}  // namespace detail

// Exact maximum cycle mean with a witness cycle. Runs the Karp recurrence
// per SCC and combines by max; value 0 with an empty witness iff acyclic.
template <class S>
CycleMean<S> max_cycle_mean(const Mat<S>& a) {
    const SccDecomposition scc = scc_decompose(a);
    std::optional<Root<S>> best;
    std::size_t best_comp = 0;
    for (std::size_t c = 0; c < scc.count(); ++c) {
        const auto& verts = scc.members[c];
        if (verts.size() == 1 && a(verts[0], verts[0]).is_zero()) continue;
        auto mu = detail::karp_scc(detail::submatrix(a, verts));
        if (mu && (!best || best->cmp(*mu) < 0)) {
            best = std::move(mu);
            best_comp = c;
        }
    }
    if (!best) return {Root<S>(S(0), 1), {}};
    const auto& verts = scc.members[best_comp];
    std::vector<std::size_t> local =
        detail::critical_cycle(detail::submatrix(a, verts), *best);
    std::vector<std::size_t> cycle;
    cycle.reserve(local.size());
    for (std::size_t v : local) cycle.push_back(verts[v]);
    return {*best, std::move(cycle)};
}

// All simple cycles with exact means, sorted descending. Brute-force oracle;
// refuses matrices larger than max_n.
template <class S>
std::vector<CycleMean<S>> enumerate_cycle_means(const Mat<S>& a, std::size_t max_n = 8) {
    if (!a.is_square()) throw shape_error("enumerate_cycle_means: non-square input");
    if (a.rows() > max_n)
        throw precondition_error("enumerate_cycle_means: dimension " +
                                 std::to_string(a.rows()) + " exceeds guard " +
                                 std::to_string(max_n));
    const std::size_t n = a.rows();
    const auto adj = adjacency(a);
    std::vector<CycleMean<S>> out;
    std::vector<std::size_t> path;
    std::vector<bool> on_path(n, false);
    // enumerate each cycle once, anchored at its smallest vertex
    auto dfs = [&](auto&& self, std::size_t start, std::size_t u) -> void {
        for (std::size_t v : adj[u]) {
            if (v == start) {
                S w(1);
                for (std::size_t t = 0; t + 1 < path.size(); ++t)
                    w = w * a(path[t], path[t + 1]);
                w = w * a(path.back(), start);
                out.push_back({Root<S>(w, path.size()), path});
            } else if (v > start && !on_path[v]) {
                path.push_back(v);
                on_path[v] = true;
                self(self, start, v);
                on_path[v] = false;
                path.pop_back();
            }
        }
    };
    for (std::size_t s = 0; s < n; ++s) {
        path.assign(1, s);
        on_path[s] = true;
        dfs(dfs, s, s);
        on_path[s] = false;
    }
    std::sort(out.begin(), out.end(), [](const CycleMean<S>& x, const CycleMean<S>& y) {
        const int c = x.value.cmp(y.value);
        if (c != 0) return c > 0;
        if (x.cycle.size() != y.cycle.size()) return x.cycle.size() < y.cycle.size();
        return x.cycle < y.cycle;
    });
    return out;
}

struct TriangularizerResult {
    std::optional<Perm> sigma;
    std::vector<std::size_t> cycle_witness;  // off-diagonal support cycle when sigma is absent
};

// A common permutation P with P^{-1} A P upper triangular for every member,
// if one exists. Exists iff the off-diagonal support of the (+)-sum is
// acyclic; returns the lexicographically smallest topological order.
template <class S>
TriangularizerResult find_common_triangularizer(const std::vector<Mat<S>>& mats) {
    if (mats.empty()) throw precondition_error("find_common_triangularizer: empty family");
    Mat<S> u = mats.front();
    for (std::size_t i = 1; i < mats.size(); ++i) u = oplus(u, mats[i]);
    const std::size_t n = u.rows();
    std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
    std::vector<std::size_t> indeg(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !u(i, j).is_zero()) {
                edge[i][j] = true;
                ++indeg[j];
            }
    std::vector<std::size_t> order;
    std::vector<bool> placed(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!placed[v] && indeg[v] == 0) {
                pick = v;
                break;
            }
        if (pick == n) break;
        placed[pick] = true;
        order.push_back(pick);
        for (std::size_t w = 0; w < n; ++w)
            if (edge[pick][w]) --indeg[w];
    }
    TriangularizerResult r;
    if (order.size() == n) {
        r.sigma = Perm(std::move(order));
        return r;
    }
    // witness: every stuck vertex keeps an in-edge from another stuck vertex,
    // so walking predecessors must revisit one, closing a cycle
    std::size_t v = 0;
    while (placed[v]) ++v;
    std::vector<std::size_t> seen(n, static_cast<std::size_t>(-1));
    std::vector<std::size_t> walk;
    while (seen[v] == static_cast<std::size_t>(-1)) {
        seen[v] = walk.size();
        walk.push_back(v);
        for (std::size_t u = 0; u < n; ++u)
            if (!placed[u] && edge[u][v]) {
                v = u;
                break;
            }
    }
    r.cycle_witness.assign(walk.begin() + seen[v], walk.end());
    std::reverse(r.cycle_witness.begin(), r.cycle_witness.end());
    return r;
}

template <class S>
TriangularizerResult find_common_triangularizer(const Family<S>& f) {
    return find_common_triangularizer(f.mats);
}

}  // namespace maxalg
