#ifndef GBSGI_EVENTS_HPP
#define GBSGI_EVENTS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbsgi/matrix.hpp"
#include "gbsgi/numeric.hpp"

namespace gbsgi {

// Photon counts per mode; the index into every invariant.
struct DetectionEvent {
    std::vector<unsigned> counts;

    std::size_t modes() const { return counts.size(); }
    unsigned total() const {
        return std::accumulate(counts.begin(), counts.end(), 0u);
    }
    unsigned max_count() const {
        return counts.empty() ? 0u : *std::max_element(counts.begin(), counts.end());
    }

    // true when the counts force haf(A (x) J) = 0 for zero-diagonal A:
    // odd total, or one mode asking for more photons than all others combined
    bool structurally_zero() const {
        return total() % 2 != 0 || 2u * max_count() > total();
    }

    Int count_factorial() const {  // n! = prod n_i!
        Int r = 1;
        for (unsigned c : counts) r *= factorial(c);
        return r;
    }

    bool operator==(const DetectionEvent&) const = default;
    auto operator<=>(const DetectionEvent&) const = default;

    std::string str() const {  // compressed "0^4 1^4 2" notation
        std::ostringstream out;
        std::size_t i = 0;
        bool first = true;
        while (i < counts.size()) {
            std::size_t j = i;
            while (j < counts.size() && counts[j] == counts[i]) ++j;
            if (!first) out << ' ';
            out << counts[i];
            if (j - i > 1) out << '^' << (j - i);
            first = false;
            i = j;
        }
        return out.str();
    }
};

// Equivalence class of detection events under mode permutation.
struct Orbit {
    DetectionEvent representative;  // counts sorted ascending
    Int size;
    std::map<unsigned, std::size_t> multiplicities;  // photon count -> #modes

    unsigned total() const { return representative.total(); }
    std::size_t modes() const { return representative.modes(); }
};

// |O_n| = M! / prod_j k_j!, the multinomial over count multiplicities.
inline Int orbit_size(const DetectionEvent& rep) {
    Int size = factorial(static_cast<unsigned>(rep.modes()));
    std::map<unsigned, std::size_t> mult;
    for (unsigned c : rep.counts) ++mult[c];
    for (auto& [count, k] : mult) size /= factorial(static_cast<unsigned>(k));
    return size;
}

inline Orbit make_orbit(DetectionEvent rep) {
    std::sort(rep.counts.begin(), rep.counts.end());
    Orbit o;
    o.size = orbit_size(rep);
    for (unsigned c : rep.counts) ++o.multiplicities[c];
    o.representative = std::move(rep);
    return o;
}

// All partitions of `total` into at most `max_parts` parts, padded with
// zeros to length max_parts and sorted ascending; lexicographic order of the
// padded representatives. Odd totals have zero probability and are rejected.
inline std::vector<DetectionEvent> partitions(unsigned total,
                                              std::size_t max_parts) {
    if (total % 2 != 0)
        throw std::invalid_argument(
            "partitions: odd totals have zero probability and are not "
            "stratified");
    std::vector<DetectionEvent> out;
    std::vector<unsigned> parts;
    auto gen = [&](auto&& self, unsigned remaining, unsigned max_part) -> void {
        if (remaining == 0) {
            DetectionEvent e;
            e.counts.assign(max_parts - parts.size(), 0u);
            e.counts.insert(e.counts.end(), parts.rbegin(), parts.rend());
            out.push_back(std::move(e));
            return;
        }
        if (parts.size() == max_parts) return;
        for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
            parts.push_back(p);
            self(self, remaining - p, p);
            parts.pop_back();
        }
    };
    gen(gen, total, total);
    std::sort(out.begin(), out.end());
    return out;
}

// Lazy stream over every distinct permutation of a representative, in
// lexicographic order; length equals orbit_size. Orbits can have 10^7+
// elements, so consumers must not materialize the stream.
class OrbitElementStream {
public:
    explicit OrbitElementStream(const DetectionEvent& rep)
        : current_(rep), fresh_(true) {
        std::sort(current_.counts.begin(), current_.counts.end());
    }

    // returns false once exhausted, and stays exhausted (next_permutation
    // would otherwise wrap around to the sorted order and restart the cycle)
    bool next(DetectionEvent& out) {
        if (done_) return false;
        if (fresh_) {
            fresh_ = false;
            out = current_;
            return true;
        }
        if (!std::next_permutation(current_.counts.begin(),
                                   current_.counts.end())) {
            done_ = true;
            return false;
        }
        out = current_;
        return true;
    }

private:
    DetectionEvent current_;
    bool fresh_;
    bool done_ = false;
};

// A (x) J_|n|: row/column i of `a` replicated n_i times, modes with n_i = 0
// deleted. Block (i,j) equals a_ij * J_{n_i,n_j}, including the diagonal
// blocks (zero for adjacency input).
template <typename T>
SquareMatrix<T> kron_reduced(const SquareMatrix<T>& a, const DetectionEvent& n) {
    if (n.modes() != a.order())
        throw std::invalid_argument("kron_reduced: event length mismatch");
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < n.modes(); ++i)
        for (unsigned r = 0; r < n.counts[i]; ++r) rows.push_back(i);
    SquareMatrix<T> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j)
            out(i, j) = a(rows[i], rows[j]);
    return out;
}

}  // namespace gbsgi

#endif
