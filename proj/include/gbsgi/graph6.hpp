#ifndef GBSGI_GRAPH6_HPP
#define GBSGI_GRAPH6_HPP

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbsgi/graph.hpp"

namespace gbsgi {

struct Graph6ParseError : std::runtime_error {
    Graph6ParseError(const std::string& what, std::size_t byte_offset)
        : std::runtime_error("graph6 parse error at byte " +
                             std::to_string(byte_offset) + ": " + what),
          offset(byte_offset) {}
    std::size_t offset;
};

// graph6 text format (one graph per line, orders up to 62 use the one-byte
// header). Edge bits run column-major over the upper triangle:
// (0,1),(0,2),(1,2),(0,3),...
inline Graph parse_graph6(const std::string& text) {
    std::string s = text;
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    if (s.rfind(">>graph6<<", 0) == 0) s = s.substr(10);
    if (s.empty()) throw Graph6ParseError("empty input", 0);

    std::size_t pos = 0;
    std::size_t n = 0;
    if (s[0] == '~') {
        // multi-byte order header (n > 62)
        if (s.size() >= 2 && s[1] == '~')
            throw Graph6ParseError("orders above 258047 not supported", 0);
        if (s.size() < 4) throw Graph6ParseError("truncated order header", 0);
        n = 0;
        for (pos = 1; pos < 4; ++pos) {
            const int v = s[pos] - 63;
            if (v < 0 || v > 63)
                throw Graph6ParseError("byte outside graph6 range", pos);
            n = (n << 6) | static_cast<std::size_t>(v);
        }
    } else {
        const int v = s[0] - 63;
        if (v < 0 || v > 62) throw Graph6ParseError("malformed order byte", 0);
        n = static_cast<std::size_t>(v);
        pos = 1;
    }

    const std::size_t nbits = n * (n - 1) / 2;
    const std::size_t nbytes = (nbits + 5) / 6;
    if (s.size() - pos != nbytes)
        throw Graph6ParseError("edge data length mismatch: expected " +
                                   std::to_string(nbytes) + " bytes, got " +
                                   std::to_string(s.size() - pos),
                               pos);

    Graph g(n);
    std::size_t bit = 0, ei = 0, ej = 1;
    for (std::size_t b = 0; b < nbytes; ++b) {
        const int v = s[pos + b] - 63;
        if (v < 0 || v > 63)
            throw Graph6ParseError("byte outside graph6 range", pos + b);
        for (int k = 5; k >= 0; --k, ++bit) {
            const bool set = (v >> k) & 1;
            if (bit >= nbits) {
                if (set)
                    throw Graph6ParseError("non-canonical padding bits", pos + b);
                continue;
            }
            if (set) g.add_edge(ei, ej);
            if (++ei == ej) {
                ei = 0;
                ++ej;
            }
        }
    }
    return g;
}

inline std::string emit_graph6(const Graph& g) {
    const std::size_t n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    int acc = 0, nb = 0;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.edge(i, j) ? 1 : 0);
            if (++nb == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = nb = 0;
            }
        }
    if (nb > 0) out.push_back(static_cast<char>((acc << (6 - nb)) + 63));
    return out;
}

// One graph per non-empty line.
inline std::vector<Graph> parse_graph6_file(const std::string& contents) {
    std::vector<Graph> graphs;
    std::istringstream in(contents);
    std::string line;
    std::size_t idx = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Graph g = parse_graph6(line);
        g.set_label("g" + std::to_string(idx++));
        graphs.push_back(std::move(g));
    }
    return graphs;
}

}  // namespace gbsgi

#endif
