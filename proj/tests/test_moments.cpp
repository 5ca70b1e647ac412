#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gbsgi/moments.hpp"
#include "helpers.hpp"

using namespace gbsgi;

namespace {
DetectionEvent ev(std::vector<unsigned> counts) {
    DetectionEvent e;
    e.counts = std::move(counts);
    return e;
}

RatMatrix random_symmetric(std::mt19937& rng, std::size_t n, bool zero_diag) {
    RatMatrix m(n);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 4);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            if (i == j && zero_diag) continue;
            m(i, j) = m(j, i) = Rat(num(rng), den(rng));
        }
    return m;
}
}  // namespace

TEST_CASE("moment base cases") {
    RatMatrix b(2);
    b(0, 1) = b(1, 0) = 1;
    CHECK(moment(ev({1, 1}), b) == 1);
    CHECK(moment(ev({1, 0}), b) == 0);  // odd total

    // n=(2,2): B11 B22 + 2 B12^2 over the 3 pairings of {1,1,2,2}
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const RatMatrix m = random_symmetric(rng, 2, false);
        CHECK(moment(ev({2, 2}), m) ==
              m(0, 0) * m(1, 1) + 2 * m(0, 1) * m(0, 1));
        // n=(2,0): the only pairing uses the diagonal
        CHECK(moment(ev({2, 0}), m) == m(0, 0));
    }

    RatMatrix z(3);
    CHECK(moment(ev({2, 0, 0}), z) == 0);  // zero diagonal kills the loop term

    CHECK_THROWS_AS(moment(ev({1, 1}), RatMatrix(3)), std::invalid_argument);
    DetectionEvent too_big = ev({14, 0});
    CHECK_THROWS_AS(moment(too_big, RatMatrix(2)), std::invalid_argument);
}

TEST_CASE("zero-diagonal moments equal hafnians of the expanded matrix") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const RatMatrix a = random_symmetric(rng, 4, true);
        DetectionEvent n;
        n.counts.assign(4, 0);
        for (auto& c : n.counts) c = rng() % 3;
        if (n.total() % 2 != 0 || n.total() > 8) continue;
        CHECK(moment(n, a) == hafnian_oracle_unchecked(kron_reduced(a, n)));
    }
}

TEST_CASE("diagonal-shift recursion equals the direct moment") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t order = 2 + rng() % 3;
        const RatMatrix a = random_symmetric(rng, order, true);
        const Rat t(static_cast<int>(rng() % 9) - 4,
                    1 + static_cast<int>(rng() % 3));
        DetectionEvent n;
        n.counts.assign(order, 0);
        do {
            for (auto& c : n.counts) c = rng() % 4;
        } while (n.total() % 2 != 0 || n.total() > 8);

        const RatMatrix shifted = a.shifted_diagonal(t);
        CHECK(moment_diagonal_shift(n, a, t) == moment(n, shifted));
    }

    RatMatrix with_diag(2);
    with_diag(0, 0) = 1;
    CHECK_THROWS_AS(moment_diagonal_shift(ev({1, 1}), with_diag, Rat(1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(moment_diagonal_shift(ev({1, 0}), RatMatrix(2), Rat(1)),
                    std::invalid_argument);
}

TEST_CASE("t = 0 reduces to the plain moment") {
    std::mt19937 rng(13);
    const RatMatrix a = random_symmetric(rng, 3, true);
    for (auto counts : {std::vector<unsigned>{2, 1, 1},
                        std::vector<unsigned>{2, 2, 2},
                        std::vector<unsigned>{0, 3, 3}})
        CHECK(moment_diagonal_shift(ev(counts), a, Rat(0)) ==
              moment(ev(counts), a));
}

TEST_CASE("the (2,3,3) worked polynomial") {
    // mu((2,3,3), tI + A) =
    //   36 a12 a13 a23^2 + 6 t a23 (3 (a12^2 + a13^2) + a23^2)
    //   + 18 t^2 a12 a13 + 9 t^3 a23
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    for (int trial = 0; trial < 20; ++trial) {
        const Rat a12(num(rng), den(rng)), a13(num(rng), den(rng)),
            a23(num(rng), den(rng)), t(num(rng), den(rng));
        RatMatrix a(3);
        a(0, 1) = a(1, 0) = a12;
        a(0, 2) = a(2, 0) = a13;
        a(1, 2) = a(2, 1) = a23;
        const Rat expected = 36 * a12 * a13 * a23 * a23 +
                             6 * t * a23 * (3 * (a12 * a12 + a13 * a13) +
                                            a23 * a23) +
                             18 * t * t * a12 * a13 + 9 * t * t * t * a23;
        CHECK(moment_diagonal_shift(ev({2, 3, 3}), a, t) == expected);
    }

    // triangle at a = 1: 36 + 42 t + 18 t^2 + 9 t^3
    RatMatrix tri(3);
    tri(0, 1) = tri(1, 0) = tri(0, 2) = tri(2, 0) = tri(1, 2) = tri(2, 1) = 1;
    CHECK(moment_diagonal_shift(ev({2, 3, 3}), tri, Rat(1)) == 36 + 42 + 18 + 9);
    // mu((2,1,1), A) = 2 a12 a13: the index multiset {1,1,2,3} has two
    // nonzero pairings, (1,2)(1,3) both ways round
    CHECK(moment(ev({2, 1, 1}), tri) == 2);
}

TEST_CASE("moments factorize over direct sums") {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 30; ++trial) {
        const RatMatrix a = random_symmetric(rng, 3, false);
        DetectionEvent p, q;
        p.counts.assign(3, 0);
        q.counts.assign(3, 0);
        do {
            for (auto& c : p.counts) c = rng() % 3;
        } while (p.total() % 2 != 0 || p.total() > 4);
        do {
            for (auto& c : q.counts) c = rng() % 3;
        } while (q.total() % 2 != 0 || q.total() > 4);

        DetectionEvent joint;
        joint.counts = p.counts;
        joint.counts.insert(joint.counts.end(), q.counts.begin(),
                            q.counts.end());
        CHECK(moment(joint, RatMatrix::direct_sum(a, a)) ==
              moment(p, a) * moment(q, a));
    }
}

TEST_CASE("permutational similarity brute force") {
    std::mt19937 rng(23);
    const RatMatrix s = random_symmetric(rng, 4, false);
    std::vector<std::size_t> perm{2, 0, 3, 1};
    CHECK(permutational_similarity_brute(s, s.permuted(perm)));

    RatMatrix d1(2), d2(2), d3(2);
    d1(0, 0) = 1; d1(1, 1) = 2;
    d2(0, 0) = 2; d2(1, 1) = 1;
    d3(0, 0) = 1; d3(1, 1) = 3;
    CHECK(permutational_similarity_brute(d1, d2));
    CHECK_FALSE(permutational_similarity_brute(d1, d3));
    CHECK_FALSE(permutational_similarity_brute(d1, RatMatrix(3)));
    CHECK_THROWS_AS(permutational_similarity_brute(RatMatrix(6), RatMatrix(6)),
                    std::invalid_argument);
}

TEST_CASE("symmetrized moments separate iff permutationally similar (small)") {
    // Thm.-style equivalence probed on diagonal matrices: equal moment sums
    // over all permutations at small n iff the diagonals are permutations of
    // each other
    auto sym_sum = [](const RatMatrix& s, const DetectionEvent& n) {
        std::vector<std::size_t> perm(s.order());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        Rat total(0);
        do {
            total += moment(n, s.permuted(perm));
        } while (std::next_permutation(perm.begin(), perm.end()));
        return total;
    };
    RatMatrix d1(3), d2(3);
    d1(0, 0) = 1; d1(1, 1) = 2; d1(2, 2) = 3;
    d2(0, 0) = 3; d2(1, 1) = 1; d2(2, 2) = 2;  // permutation of d1
    RatMatrix d3 = d1;
    d3(2, 2) = 4;  // not a permutation
    const DetectionEvent n = ev({4, 2, 0});
    CHECK(sym_sum(d1, n) == sym_sum(d2, n));
    CHECK(sym_sum(d1, n) != sym_sum(d3, n));
}
