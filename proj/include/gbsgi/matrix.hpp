#ifndef GBSGI_MATRIX_HPP
#define GBSGI_MATRIX_HPP

#include <cassert>
#include <cstddef>
#include <vector>

#include "gbsgi/numeric.hpp"

namespace gbsgi {

// Dense square matrix over an exact scalar (Int or Rat). Symmetry is a
// caller-maintained invariant; symmetric() checks it.
template <typename T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, const T& fill = T(0))
        : n_(n), data_(n * n, fill) {}

    std::size_t order() const { return n_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const {
        return data_[i * n_ + j];
    }

    bool operator==(const SquareMatrix&) const = default;

    bool symmetric() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (data_[i * n_ + j] != data_[j * n_ + i]) return false;
        return true;
    }

    bool zero_diagonal() const {
        for (std::size_t i = 0; i < n_; ++i)
            if (data_[i * n_ + i] != T(0)) return false;
        return true;
    }

    SquareMatrix scaled(const T& c) const {
        SquareMatrix r(n_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * c;
        return r;
    }

    SquareMatrix shifted_diagonal(const T& k) const {
        SquareMatrix r = *this;
        for (std::size_t i = 0; i < n_; ++i) r(i, i) += k;
        return r;
    }

    // Block-diagonal direct sum.
    static SquareMatrix direct_sum(const SquareMatrix& a, const SquareMatrix& b) {
        SquareMatrix r(a.order() + b.order());
        for (std::size_t i = 0; i < a.order(); ++i)
            for (std::size_t j = 0; j < a.order(); ++j) r(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.order(); ++i)
            for (std::size_t j = 0; j < b.order(); ++j)
                r(a.order() + i, a.order() + j) = b(i, j);
        return r;
    }

    template <typename U>
    SquareMatrix<U> cast() const {
        SquareMatrix<U> r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r(i, j) = U(data_[i * n_ + j]);
        return r;
    }

    // PᵀMP for the permutation i -> perm[i] acting on indices.
    SquareMatrix permuted(const std::vector<std::size_t>& perm) const {
        assert(perm.size() == n_);
        SquareMatrix r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                r(i, j) = (*this)(perm[i], perm[j]);
        return r;
    }

private:
    std::size_t n_ = 0;
    std::vector<T> data_;
};

using IntMatrix = SquareMatrix<Int>;
using RatMatrix = SquareMatrix<Rat>;

}  // namespace gbsgi

#endif
