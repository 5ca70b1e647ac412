#ifndef GBSGI_GRAPH_HPP
#define GBSGI_GRAPH_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gbsgi/matrix.hpp"
#include "gbsgi/numeric.hpp"

namespace gbsgi {

// Simple undirected graph: symmetric 0/1 adjacency, zero diagonal.
// Vertices are 0-indexed internally.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t order, std::string label = {})
        : adj_(order, std::vector<std::uint8_t>(order, 0)),
          label_(std::move(label)) {}

    static Graph from_adjacency(const std::vector<std::vector<std::uint8_t>>& a,
                                std::string label = {}) {
        Graph g(a.size(), std::move(label));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].size() != a.size())
                throw std::invalid_argument("adjacency matrix not square");
            for (std::size_t j = 0; j < a.size(); ++j) {
                if (a[i][j] != 0 && a[i][j] != 1)
                    throw std::invalid_argument("adjacency entries must be 0 or 1");
                if (a[i][j] != a[j][i])
                    throw std::invalid_argument("adjacency matrix not symmetric");
            }
            if (a[i][i] != 0)
                throw std::invalid_argument("adjacency diagonal must be zero");
        }
        g.adj_ = a;
        return g;
    }

    std::size_t order() const { return adj_.size(); }
    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    bool edge(std::size_t i, std::size_t j) const { return adj_[i][j] != 0; }
    void add_edge(std::size_t i, std::size_t j) {
        if (i == j) throw std::invalid_argument("self loops not allowed");
        adj_[i][j] = adj_[j][i] = 1;
    }

    std::size_t degree(std::size_t v) const {
        return std::accumulate(adj_[v].begin(), adj_[v].end(), std::size_t{0});
    }

    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> e;
        for (std::size_t i = 0; i < order(); ++i)
            for (std::size_t j = i + 1; j < order(); ++j)
                if (edge(i, j)) e.emplace_back(i, j);
        return e;
    }

    IntMatrix adjacency() const {
        IntMatrix m(order());
        for (std::size_t i = 0; i < order(); ++i)
            for (std::size_t j = 0; j < order(); ++j) m(i, j) = adj_[i][j];
        return m;
    }

    bool operator==(const Graph& o) const { return adj_ == o.adj_; }

    bool connected() const {
        if (order() == 0) return true;
        std::vector<bool> seen(order(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (std::size_t w = 0; w < order(); ++w)
                if (edge(v, w) && !seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }

    // Disjoint union of `copies` copies of this graph.
    Graph disjoint_power(std::size_t copies) const {
        Graph g(order() * copies, label_.empty() ? "" : label_ + "^+" +
                                                            std::to_string(copies));
        for (std::size_t c = 0; c < copies; ++c)
            for (auto [i, j] : edges()) g.add_edge(c * order() + i, c * order() + j);
        return g;
    }

private:
    std::vector<std::vector<std::uint8_t>> adj_;
    std::string label_;
};

struct Spectrum {
    std::vector<double> eigenvalues;  // sorted descending
    double spectral_norm = 0.0;
};

struct SrgParams {
    std::size_t n = 0, k = 0, lambda = 0, mu = 0;
    bool operator==(const SrgParams&) const = default;
};

// Bijection on {0..M-1}; image of vertex i is mapping[i].
struct VertexPermutation {
    std::vector<std::size_t> mapping;

    static VertexPermutation identity(std::size_t n) {
        VertexPermutation p;
        p.mapping.resize(n);
        std::iota(p.mapping.begin(), p.mapping.end(), std::size_t{0});
        return p;
    }

    bool valid() const {
        std::vector<bool> hit(mapping.size(), false);
        for (auto v : mapping) {
            if (v >= mapping.size() || hit[v]) return false;
            hit[v] = true;
        }
        return true;
    }
};

// Eigenvalues of the adjacency matrix via a symmetric eigensolver.
// Accuracy is that of Eigen's SelfAdjointEigenSolver, comfortably below the
// 1e-9 cospectrality tolerance for integer matrices at the orders used here.
inline Spectrum spectrum(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.order());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = g.edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) ? 1.0 : 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    Spectrum s;
    s.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + n);
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>());
    for (double ev : s.eigenvalues) s.spectral_norm = std::max(s.spectral_norm, std::abs(ev));
    return s;
}

inline constexpr double kCospectralTol = 1e-9;

inline bool is_cospectral(const Graph& g1, const Graph& g2,
                          double tol = kCospectralTol) {
    if (g1.order() != g2.order())
        throw std::invalid_argument("is_cospectral: order mismatch");
    auto s1 = spectrum(g1), s2 = spectrum(g2);
    for (std::size_t i = 0; i < s1.eigenvalues.size(); ++i)
        if (std::abs(s1.eigenvalues[i] - s2.eigenvalues[i]) > tol) return false;
    return true;
}

// Parameters if g is strongly regular, absent otherwise.
inline std::optional<SrgParams> validate_srg(const Graph& g) {
    const std::size_t n = g.order();
    if (n < 2) return std::nullopt;
    const std::size_t k = g.degree(0);
    for (std::size_t v = 1; v < n; ++v)
        if (g.degree(v) != k) return std::nullopt;
    if (k == 0 || k == n - 1) return std::nullopt;  // null or complete

    auto common = [&](std::size_t u, std::size_t v) {
        std::size_t c = 0;
        for (std::size_t w = 0; w < n; ++w)
            if (g.edge(u, w) && g.edge(v, w)) ++c;
        return c;
    };
    std::optional<std::size_t> lambda, mu;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            const std::size_t c = common(u, v);
            auto& slot = g.edge(u, v) ? lambda : mu;
            if (!slot)
                slot = c;
            else if (*slot != c)
                return std::nullopt;
        }
    return SrgParams{n, k, lambda.value_or(0), mu.value_or(0)};
}

// PᵀAP: vertex i of the result is vertex p.mapping[i] of the input.
inline Graph apply_permutation(const Graph& g, const VertexPermutation& p) {
    if (p.mapping.size() != g.order())
        throw std::invalid_argument("apply_permutation: degree mismatch");
    if (!p.valid()) throw std::invalid_argument("apply_permutation: not a bijection");
    Graph r(g.order(), g.label());
    for (std::size_t i = 0; i < g.order(); ++i)
        for (std::size_t j = i + 1; j < g.order(); ++j)
            if (g.edge(p.mapping[i], p.mapping[j])) r.add_edge(i, j);
    return r;
}

inline constexpr std::size_t kBruteForceOrderLimit = 10;

// Backtracking search for a permutation with PᵀA₂P = A₁.
inline std::optional<VertexPermutation> brute_force_isomorphic(const Graph& g1,
                                                               const Graph& g2) {
    if (g1.order() != g2.order())
        throw std::invalid_argument("brute_force_isomorphic: order mismatch");
    if (g1.order() > kBruteForceOrderLimit)
        throw std::invalid_argument(
            "brute_force_isomorphic: order above limit " +
            std::to_string(kBruteForceOrderLimit) +
            "; use the certificate pipeline for larger graphs");
    const std::size_t n = g1.order();

    std::vector<std::size_t> d1(n), d2(n);
    for (std::size_t v = 0; v < n; ++v) d1[v] = g1.degree(v), d2[v] = g2.degree(v);
    {
        auto s1 = d1, s2 = d2;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2) return std::nullopt;
    }

    // map[i] = image of result-vertex i in g2; g1(i,j) must equal g2(map[i],map[j])
    std::vector<std::size_t> map(n);
    std::vector<bool> used(n, false);
    auto extend = [&](auto&& self, std::size_t depth) -> bool {
        if (depth == n) return true;
        for (std::size_t cand = 0; cand < n; ++cand) {
            if (used[cand] || d1[depth] != d2[cand]) continue;
            bool ok = true;
            for (std::size_t i = 0; i < depth && ok; ++i)
                ok = g1.edge(i, depth) == g2.edge(map[i], cand);
            if (!ok) continue;
            map[depth] = cand;
            used[cand] = true;
            if (self(self, depth + 1)) return true;
            used[cand] = false;
        }
        return false;
    };
    if (!extend(extend, 0)) return std::nullopt;
    VertexPermutation p;
    p.mapping = map;
    return p;
}

namespace detail {

// Graphs are encoded as bitmasks over column-major upper-triangle pairs
// (0,1),(0,2),(1,2),(0,3),... -- the graph6 bit order. A graph is kept iff
// its bitstring is lexicographically minimal over all relabelings; the
// search prunes as soon as a partial relabeling exceeds the original prefix.
inline bool edge_bit(std::uint64_t mask, std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return (mask >> (j * (j - 1) / 2 + i)) & 1u;
}

inline bool lex_minimal(std::uint64_t mask, std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::vector<bool> used(n, false);
    // returns: -1 relabeling smaller (not minimal), 0 tie so far, +1 pruned
    auto walk = [&](auto&& self, std::size_t depth) -> int {
        if (depth == n) return 0;
        for (std::size_t cand = 0; cand < n; ++cand) {
            if (used[cand]) continue;
            int cmp = 0;
            for (std::size_t i = 0; i < depth; ++i) {
                const bool orig = edge_bit(mask, i, depth);
                const bool rel = edge_bit(mask, perm[i], cand);
                if (rel != orig) {
                    cmp = rel ? 1 : -1;
                    break;
                }
            }
            if (cmp == -1) return -1;
            if (cmp == 1) continue;
            perm[depth] = cand;
            used[cand] = true;
            const int deeper = self(self, depth + 1);
            used[cand] = false;
            if (deeper == -1) return -1;
        }
        return 0;
    };
    return walk(walk, 0) == 0;
}

inline Graph graph_from_mask(std::uint64_t mask, std::size_t n) {
    Graph g(n);
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (edge_bit(mask, i, j)) g.add_edge(i, j);
    return g;
}

}  // namespace detail

inline constexpr std::size_t kEnumerationOrderLimit = 7;

// All non-isomorphic cospectral pairs of the given order, found by exhaustive
// enumeration of isomorphism-class representatives grouped by spectrum.
inline std::vector<std::pair<Graph, Graph>> enumerate_cospectral_pairs(
    std::size_t order, bool connected_only) {
    if (order > kEnumerationOrderLimit)
        throw std::invalid_argument("enumerate_cospectral_pairs: order above limit " +
                                    std::to_string(kEnumerationOrderLimit));
    std::vector<std::uint64_t> reps;
    const std::size_t bits = order * (order - 1) / 2;
    for (std::uint64_t mask = 0; mask < (1ull << bits); ++mask) {
        if (!detail::lex_minimal(mask, order)) continue;
        if (connected_only && !detail::graph_from_mask(mask, order).connected())
            continue;
        reps.push_back(mask);
    }

    // group by quantized spectrum, confirm with is_cospectral
    struct Entry {
        std::uint64_t mask;
        Graph graph;
        std::vector<long long> key;
    };
    std::vector<Entry> entries;
    for (auto mask : reps) {
        Entry e;
        e.mask = mask;
        e.graph = detail::graph_from_mask(mask, order);
        for (double ev : spectrum(e.graph).eigenvalues)
            e.key.push_back(std::llround(ev * 1e6));
        entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.key != b.key ? a.key < b.key : a.mask < b.mask;
    });

    std::vector<std::pair<Graph, Graph>> pairs;
    for (std::size_t lo = 0; lo < entries.size();) {
        std::size_t hi = lo + 1;
        while (hi < entries.size() && entries[hi].key == entries[lo].key) ++hi;
        for (std::size_t a = lo; a < hi; ++a)
            for (std::size_t b = a + 1; b < hi; ++b)
                if (is_cospectral(entries[a].graph, entries[b].graph))
                    pairs.emplace_back(entries[a].graph, entries[b].graph);
        lo = hi;
    }
    return pairs;
}

}  // namespace gbsgi

#endif
