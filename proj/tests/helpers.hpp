#ifndef GBSGI_TESTS_HELPERS_HPP
#define GBSGI_TESTS_HELPERS_HPP

#include <array>
#include <random>
#include <vector>

#include "gbsgi/graph.hpp"
#include "gbsgi/graph6.hpp"

namespace helpers {

using gbsgi::Graph;

inline Graph path(std::size_t n) {
    Graph g(n, "P" + std::to_string(n));
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline Graph cycle(std::size_t n) {
    Graph g = path(n);
    g.set_label("C" + std::to_string(n));
    if (n > 2) g.add_edge(n - 1, 0);
    return g;
}

inline Graph complete(std::size_t n) {
    Graph g(n, "K" + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

inline Graph star(std::size_t leaves) {
    Graph g(leaves + 1, "S" + std::to_string(leaves));
    for (std::size_t i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

// single edge plus isolated vertices
inline Graph single_edge(std::size_t order) {
    Graph g(order, "edge");
    g.add_edge(0, 1);
    return g;
}

// 4x4 rook's graph = line graph of K_{4,4}: vertices (i,j), adjacent when the
// row or the column matches. SRG(16,6,2,2).
inline Graph rook44() {
    Graph g(16, "rook44");
    auto id = [](int i, int j) { return i * 4 + j; };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            for (int k = j + 1; k < 4; ++k) g.add_edge(id(i, j), id(i, k));
            for (int k = i + 1; k < 4; ++k) g.add_edge(id(i, j), id(k, j));
        }
    return g;
}

// Cayley graph of Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}.
// The other SRG(16,6,2,2); not isomorphic to the rook's graph.
inline Graph shrikhande() {
    Graph g(16, "shrikhande");
    auto id = [](int i, int j) {
        return ((i % 4 + 4) % 4) * 4 + ((j % 4 + 4) % 4);
    };
    const int gen[6][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (auto& d : gen) {
                const int u = id(i, j), v = id(i + d[0], j + d[1]);
                if (u != v && !g.edge(u, v)) g.add_edge(u, v);
            }
    return g;
}

// Paley graph on q vertices (q prime, q = 1 mod 4): SRG(q, (q-1)/2, ...).
inline Graph paley(int q) {
    Graph g(q, "paley" + std::to_string(q));
    std::vector<bool> sq(q, false);
    for (int x = 1; x < q; ++x) sq[(x * x) % q] = true;
    for (int u = 0; u < q; ++u)
        for (int v = u + 1; v < q; ++v)
            if (sq[(v - u) % q]) g.add_edge(u, v);
    return g;
}

// Block graph of the 35 lines of PG(3,2): lines adjacent when they share a
// point. SRG(35,18,9,9).
inline Graph pg32_line_graph() {
    std::vector<std::array<int, 3>> lines;
    for (int a = 1; a < 16; ++a)
        for (int b = a + 1; b < 16; ++b) {
            const int c = a ^ b;
            if (c > b) lines.push_back({a, b, c});
        }
    Graph g(lines.size(), "pg32");
    for (std::size_t u = 0; u < lines.size(); ++u)
        for (std::size_t v = u + 1; v < lines.size(); ++v) {
            bool meet = false;
            for (int x : lines[u])
                for (int y : lines[v])
                    if (x == y) meet = true;
            if (meet) g.add_edge(u, v);
        }
    return g;
}

// The unique connected cospectral non-isomorphic pair on 6 vertices, frozen
// from exhaustive enumeration.
inline std::pair<Graph, Graph> ping6() {
    Graph a = gbsgi::parse_graph6("E@]o");
    Graph b = gbsgi::parse_graph6("E@Rw");
    a.set_label("ping6a");
    b.set_label("ping6b");
    return {a, b};
}

inline Graph random_graph(std::mt19937& rng, std::size_t order,
                          double p = 0.5) {
    Graph g(order, "rand");
    std::bernoulli_distribution coin(p);
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = i + 1; j < order; ++j)
            if (coin(rng)) g.add_edge(i, j);
    return g;
}

inline gbsgi::VertexPermutation random_permutation(std::mt19937& rng,
                                                   std::size_t n) {
    auto p = gbsgi::VertexPermutation::identity(n);
    std::shuffle(p.mapping.begin(), p.mapping.end(), rng);
    return p;
}

}  // namespace helpers

#endif
