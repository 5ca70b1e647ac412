#ifndef GBSGI_MOMENTS_HPP
#define GBSGI_MOMENTS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbsgi/events.hpp"
#include "gbsgi/hafnian.hpp"
#include "gbsgi/matrix.hpp"

namespace gbsgi {

inline constexpr unsigned kMomentTotalLimit = 12;

// mu(n, B): the n-th Gaussian moment of exp(1/2 x^T B x), evaluated by
// Isserlis-style enumeration -- the sum over perfect pairings of the index
// multiset {1^{n_1}, ..., M^{n_M}} of products of B entries. For zero-diagonal
// B this equals haf(B (x) J_|n|); with a diagonal, pairs of replicated
// positions sharing a mode contribute B_ii, which is exactly what the
// expanded matrix's off-diagonal block entries carry.
inline Rat moment(const DetectionEvent& n, const RatMatrix& b) {
    if (n.modes() != b.order())
        throw std::invalid_argument("moment: event length mismatch");
    if (n.total() % 2 != 0) return 0;
    if (n.total() > kMomentTotalLimit)
        throw std::invalid_argument("moment: |n| above enumeration limit " +
                                    std::to_string(kMomentTotalLimit));
    return hafnian_oracle_unchecked(kron_reduced(b, n));
}

// mu(n, tI + A) for zero-diagonal A, via the diagonal-shift recursion: the
// t^k term sums over multisets (j_1 <= ... <= j_k) with 2 sum e_{j_l} <= n,
// each weighted by prod_i n_i! / (m_i! 2^{m_i} (n_i - 2m_i)!) and the loopless
// moment of the reduced event.
inline Rat moment_diagonal_shift(const DetectionEvent& n, const RatMatrix& a,
                                 const Rat& t) {
    if (!a.zero_diagonal())
        throw std::invalid_argument("moment_diagonal_shift: diagonal must be zero");
    if (n.total() % 2 != 0)
        throw std::invalid_argument("moment_diagonal_shift: |n| must be even");
    const std::size_t m = n.modes();

    Rat result = moment(n, a);
    const unsigned half = n.total() / 2;

    std::vector<unsigned> loops(m, 0u);  // m_i = loops placed on mode i
    Rat tpow = 1;
    for (unsigned k = 1; k <= half; ++k) {
        tpow *= t;
        Rat level(0);
        auto place = [&](auto&& self, std::size_t mode, unsigned remaining) -> void {
            if (remaining == 0) {
                Rat coef = 1;
                DetectionEvent reduced = n;
                for (std::size_t i = 0; i < m; ++i) {
                    const unsigned mi = loops[i];
                    if (mi == 0) continue;
                    coef *= Rat(factorial(n.counts[i]),
                                factorial(mi) * (Int(1) << mi) *
                                    factorial(n.counts[i] - 2 * mi));
                    reduced.counts[i] -= 2 * mi;
                }
                level += coef * moment(reduced, a);
                return;
            }
            if (mode == m) return;
            const unsigned cap =
                std::min(remaining, n.counts[mode] / 2);
            for (unsigned mi = 0; mi <= cap; ++mi) {
                loops[mode] = mi;
                self(self, mode + 1, remaining - mi);
            }
            loops[mode] = 0;
        };
        place(place, 0, k);
        result += tpow * level;
    }
    return result;
}

// Exhaustive permutation search; ground truth for the symmetrized-moment
// equivalences on small instances.
inline bool permutational_similarity_brute(const RatMatrix& s1,
                                           const RatMatrix& s2,
                                           std::size_t max_order = 5) {
    if (s1.order() != s2.order()) return false;
    if (s1.order() > max_order)
        throw std::invalid_argument("permutational_similarity_brute: order above limit");
    std::vector<std::size_t> perm(s1.order());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
        if (s1.permuted(perm) == s2) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace gbsgi

#endif
