#ifndef GBSGI_HAFNIAN_HPP
#define GBSGI_HAFNIAN_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbsgi/matrix.hpp"
#include "gbsgi/numeric.hpp"

namespace gbsgi {

inline constexpr std::size_t kHafnianOracleLimit = 14;
inline constexpr std::size_t kHafnianFastLimit = 32;

// Sum over all (n-1)!! pairings of {0..n-1} of the products of paired
// entries. Diagonal entries never contribute. Odd order yields 0 (no perfect
// pairing exists). Works over any exact scalar; the Rat instantiation backs
// the Gaussian-moment computations.
template <typename T>
T hafnian_oracle_unchecked(const SquareMatrix<T>& m) {
    const std::size_t n = m.order();
    if (n % 2 != 0) return T(0);
    if (n == 0) return T(1);
    std::vector<bool> used(n, false);
    T total(0);
    T product(1);
    auto recurse = [&](auto&& self, std::size_t done) -> void {
        if (done == n) {
            total += product;
            return;
        }
        std::size_t first = 0;
        while (used[first]) ++first;
        used[first] = true;
        for (std::size_t second = first + 1; second < n; ++second) {
            if (used[second]) continue;
            const T& entry = m(first, second);
            if (entry == T(0)) continue;  // prune zero products
            used[second] = true;
            T saved = product;
            product *= entry;
            self(self, done + 2);
            product = std::move(saved);
            used[second] = false;
        }
        used[first] = false;
    };
    recurse(recurse, 0);
    return total;
}

template <typename T>
T hafnian_oracle(const SquareMatrix<T>& m,
                 std::size_t limit = kHafnianOracleLimit) {
    if (m.order() > limit)
        throw std::invalid_argument("hafnian_oracle: order " +
                                    std::to_string(m.order()) + " above limit " +
                                    std::to_string(limit) +
                                    "; use hafnian_fast");
    return hafnian_oracle_unchecked(m);
}

namespace detail {

// Truncated power series over Rat, degree <= deg.
inline std::vector<Rat> series_exp(const std::vector<Rat>& p, std::size_t deg) {
    // e' = p' e  =>  k e_k = sum_{j=1..k} j p_j e_{k-j}
    std::vector<Rat> e(deg + 1, Rat(0));
    e[0] = 1;
    for (std::size_t k = 1; k <= deg; ++k) {
        Rat acc(0);
        for (std::size_t j = 1; j <= k; ++j)
            acc += Rat(j) * p[j] * e[k - j];
        e[k] = acc / Rat(k);
    }
    return e;
}

}  // namespace detail

// Exact hafnian by inclusion-exclusion over index pairs with power-trace
// accumulation:
//   haf(A) = sum over subsets S of the m = n/2 pairs of
//            (-1)^{m-|S|} [x^m] det(I - x X_S A_S)^{-1/2},
// with the coefficient extracted from exp(sum_k tr((X_S A_S)^k) x^k / (2k)).
// O(2^{n/2} poly(n)), exact over rationals, integer for integer input.
inline Int hafnian_fast(const IntMatrix& m,
                        std::size_t limit = kHafnianFastLimit) {
    const std::size_t n = m.order();
    if (n % 2 != 0) return 0;
    if (n > limit)
        throw std::invalid_argument("hafnian_fast: order " + std::to_string(n) +
                                    " above ceiling " + std::to_string(limit));
    if (n == 0) return 1;
    const std::size_t half = n / 2;

    Rat total(0);
    std::vector<std::size_t> idx;
    for (std::size_t subset = 1; subset < (1ull << half); ++subset) {
        idx.clear();
        for (std::size_t p = 0; p < half; ++p)
            if ((subset >> p) & 1) {
                idx.push_back(2 * p);
                idx.push_back(2 * p + 1);
            }
        const std::size_t s = idx.size();

        // B = X_S A_S: row 2i <-> 2i+1 swap of the submatrix
        SquareMatrix<Int> b(s);
        for (std::size_t i = 0; i < s; ++i) {
            const std::size_t src = (i % 2 == 0) ? i + 1 : i - 1;
            for (std::size_t j = 0; j < s; ++j)
                b(i, j) = m(idx[src], idx[j]);
        }

        // traces of B^k for k = 1..half
        std::vector<Rat> p(half + 1, Rat(0));
        SquareMatrix<Int> power = b;
        for (std::size_t k = 1; k <= half; ++k) {
            Int tr(0);
            for (std::size_t i = 0; i < s; ++i) tr += power(i, i);
            p[k] = Rat(tr) / Rat(2 * k);
            if (k < half) {
                SquareMatrix<Int> next(s);
                for (std::size_t i = 0; i < s; ++i)
                    for (std::size_t l = 0; l < s; ++l) {
                        if (power(i, l) == 0) continue;
                        for (std::size_t j = 0; j < s; ++j)
                            next(i, j) += power(i, l) * b(l, j);
                    }
                power = std::move(next);
            }
        }

        const std::vector<Rat> e = detail::series_exp(p, half);
        const bool negate = (half - idx.size() / 2) % 2 == 1;
        total += negate ? -e[half] : e[half];
    }
    // the empty subset contributes [x^half] of 1, i.e. 0, for half >= 1

    if (boost::multiprecision::denominator(total) != 1)
        throw std::logic_error("hafnian_fast: non-integer result");
    return boost::multiprecision::numerator(total);
}

// Consistency check: haf(c(A + A + kI)) == c^M haf(A)^2 where the
// left-hand side is built from the doubled matrix A + A of order 2M. Computed
// exactly over rationals.
inline bool hafnian_squared_identity_check(const IntMatrix& a, const Rat& c,
                                           const Int& k) {
    const std::size_t m_ord = a.order();
    const RatMatrix doubled =
        SquareMatrix<Rat>::direct_sum(a.cast<Rat>(), a.cast<Rat>())
            .shifted_diagonal(Rat(k))
            .scaled(c);
    const Rat lhs = hafnian_oracle_unchecked(doubled);
    const Int haf_a = hafnian_oracle_unchecked(a);
    Rat rhs(haf_a * haf_a);
    for (std::size_t i = 0; i < m_ord; ++i) rhs *= c;
    return lhs == rhs;
}

}  // namespace gbsgi

#endif
