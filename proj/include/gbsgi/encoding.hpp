#ifndef GBSGI_ENCODING_HPP
#define GBSGI_ENCODING_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbsgi/events.hpp"
#include "gbsgi/graph.hpp"
#include "gbsgi/hafnian.hpp"

namespace gbsgi {

// Doubled GBS encoding of a graph: R = c(A + A + kI), 0 < c < 1/(|A|_2 + k).
// det sigma_Q comes from the eigenvalue closed form
//   det sigma_Q = prod_i 1 / (1 - c^2 lambda_i(A + kI)^2),
// equivalent to det(I - XC)^{-1}; the dense determinant is kept as a test
// oracle only.
struct GbsEncoding {
    Graph graph;
    Rat c;
    Rat k;
    double c_value = 0.0;
    double det_sigma_q = 1.0;
    double prefactor = 1.0;  // 1/sqrt(det sigma_Q)
};

struct EncodabilityReport {
    bool blocks_match = false;   // R11 == R22 and R12 == R21
    bool off_block_psd = false;  // R12 >= 0
    bool scaling_ok = false;     // c in (0, 1/|R|_2)
    double offending_eigenvalue = 0.0;
    std::string message;

    bool ok() const { return blocks_match && off_block_psd && scaling_ok; }
};

namespace detail {

inline Eigen::MatrixXd to_dense(const IntMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.order());
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            d(i, j) = static_cast<double>(m(static_cast<std::size_t>(i),
                                            static_cast<std::size_t>(j)));
    return d;
}

}  // namespace detail

// Corollary-1 conditions for a 2M x 2M symmetric integer matrix to be GBS
// encodable at scale c.
inline EncodabilityReport check_encodable(const IntMatrix& r, const Rat& c) {
    if (r.order() % 2 != 0)
        throw std::invalid_argument("check_encodable: odd order");
    const std::size_t m = r.order() / 2;
    EncodabilityReport rep;

    rep.blocks_match = true;
    for (std::size_t i = 0; i < m && rep.blocks_match; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (r(i, j) != r(m + i, m + j) || r(i, m + j) != r(m + i, j)) {
                rep.blocks_match = false;
                rep.message = "block conditions R11=R22, R12=R21 violated";
                break;
            }

    Eigen::MatrixXd r12(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            r12(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                static_cast<double>(r(i, m + j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s12(r12);
    const double min_ev = m > 0 ? s12.eigenvalues().minCoeff() : 0.0;
    rep.off_block_psd = min_ev >= -1e-9;
    if (!rep.off_block_psd) {
        rep.offending_eigenvalue = min_ev;
        std::ostringstream msg;
        msg << "R12 not positive semidefinite (eigenvalue " << min_ev << ")";
        if (!rep.message.empty()) rep.message += "; ";
        rep.message += msg.str();
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sr(detail::to_dense(r));
    const double norm =
        std::max(std::abs(sr.eigenvalues().minCoeff()),
                 std::abs(sr.eigenvalues().maxCoeff()));
    const double cv = static_cast<double>(c);
    rep.scaling_ok = cv > 0 && cv * norm < 1.0 - 1e-12;
    if (!rep.scaling_ok) {
        std::ostringstream msg;
        msg << "c=" << cv << " outside the open interval (0, " << 1.0 / norm
            << ")";
        if (!rep.message.empty()) rep.message += "; ";
        rep.message += msg.str();
    }
    return rep;
}

inline GbsEncoding encode(const Graph& g, std::optional<Rat> c = std::nullopt,
                          Rat k = Rat(0)) {
    GbsEncoding e;
    e.graph = g;
    e.k = k;
    const Spectrum spec = spectrum(g);
    const double kd = static_cast<double>(k);
    const double bound = spec.spectral_norm + kd;
    if (c) {
        e.c = *c;
        const double cv = static_cast<double>(*c);
        if (!(cv > 0.0) || !(cv * bound < 1.0 - 1e-12)) {
            std::ostringstream msg;
            msg << "encode: c=" << cv << " must lie in the open interval (0, "
                << (bound > 0 ? 1.0 / bound : std::numeric_limits<double>::infinity())
                << ")";
            throw std::invalid_argument(msg.str());
        }
    } else {
        // rational rounded down from 1/(|A|_2 + k): strictly inside the bound.
        // The epsilon absorbs eigensolver jitter just below integer norms, so
        // relabeled (and cospectral) graphs always pick the same default c.
        e.c = Rat(1, static_cast<long long>(std::floor(bound + 1e-9)) + 1);
    }
    e.c_value = static_cast<double>(e.c);
    e.det_sigma_q = 1.0;
    for (double ev : spec.eigenvalues) {
        const double shifted = ev + kd;
        e.det_sigma_q /= 1.0 - e.c_value * e.c_value * shifted * shifted;
    }
    e.prefactor = 1.0 / std::sqrt(e.det_sigma_q);
    return e;
}

struct ProbabilityRecord {
    DetectionEvent event;
    Int hafnian_value;  // haf(A (x) J_|n|), exact
    double probability = 0.0;
};

// haf(A (x) J_n) with the algorithm chosen by expanded order.
inline Int event_hafnian(const IntMatrix& adjacency, const DetectionEvent& n) {
    if (n.structurally_zero()) return 0;
    const IntMatrix expanded = kron_reduced(adjacency, n);
    if (expanded.order() <= 10) return hafnian_oracle_unchecked(expanded);
    return hafnian_fast(expanded);
}

// p(n) = c^|n| / (n! sqrt(det sigma_Q)) * haf^2[A (x) J_|n|]
inline ProbabilityRecord event_probability(const GbsEncoding& e,
                                           const DetectionEvent& n) {
    if (n.modes() != e.graph.order())
        throw std::invalid_argument("event_probability: event length mismatch");
    ProbabilityRecord rec;
    rec.event = n;
    rec.hafnian_value = event_hafnian(e.graph.adjacency(), n);
    if (rec.hafnian_value == 0) {
        rec.probability = 0.0;
        return rec;
    }
    const double haf = static_cast<double>(rec.hafnian_value);
    rec.probability = e.prefactor * std::pow(e.c_value, n.total()) * haf * haf /
                      static_cast<double>(n.count_factorial());
    return rec;
}

inline constexpr unsigned kDerivativeOracleMaxTotal = 8;
inline constexpr std::size_t kDerivativeOracleMaxModes = 6;

// Independent probability path: expands (1/2 g^T C g)^|n| / |n|! as a sparse
// multivariate polynomial over the 2M doubled variables and reads off the
// coefficient of prod beta_i^{n_i} bbar_i^{n_i}. Exact over rationals up to
// the final prefactor multiply.
inline double derivative_probability_oracle(const GbsEncoding& e,
                                            const DetectionEvent& n) {
    if (n.modes() != e.graph.order())
        throw std::invalid_argument("derivative oracle: event length mismatch");
    if (n.total() > kDerivativeOracleMaxTotal ||
        e.graph.order() > kDerivativeOracleMaxModes)
        throw std::invalid_argument("derivative oracle: size limits exceeded");
    const std::size_t m = e.graph.order();
    const std::size_t vars = 2 * m;
    const unsigned T = n.total();
    if (T == 0) return e.prefactor;

    std::vector<unsigned> target(vars);
    for (std::size_t i = 0; i < m; ++i) target[i] = target[m + i] = n.counts[i];

    using Monomial = std::vector<unsigned>;
    using Poly = std::map<Monomial, Rat>;

    // q = 1/2 g^T C g with C = c(A + A + kI)
    Poly q;
    const IntMatrix a = e.graph.adjacency();
    auto add_term = [&](std::size_t u, std::size_t v, const Rat& coef) {
        Monomial mono(vars, 0u);
        ++mono[u];
        ++mono[v];
        q[mono] += coef;
    };
    for (std::size_t blk = 0; blk < 2; ++blk)
        for (std::size_t i = 0; i < m; ++i) {
            add_term(blk * m + i, blk * m + i, e.c * e.k / 2);
            for (std::size_t j = i + 1; j < m; ++j)
                if (a(i, j) != 0) add_term(blk * m + i, blk * m + j, e.c);
        }

    Poly acc;
    acc[Monomial(vars, 0u)] = 1;
    for (unsigned step = 0; step < T; ++step) {
        Poly next;
        for (const auto& [ma, ca] : acc)
            for (const auto& [mb, cb] : q) {
                Monomial mono(vars);
                bool fits = true;
                for (std::size_t v = 0; v < vars; ++v) {
                    mono[v] = ma[v] + mb[v];
                    if (mono[v] > target[v]) {
                        fits = false;
                        break;
                    }
                }
                if (fits) next[mono] += ca * cb;
            }
        acc = std::move(next);
    }

    auto it = acc.find(target);
    if (it == acc.end()) return 0.0;
    const Rat exact = it->second * Rat(n.count_factorial(), factorial(T));
    return e.prefactor * static_cast<double>(exact);
}

// p_G(O_n): prefactor * c^|n| / n! times the exact sum of squared hafnians
// over the orbit. Zero orbits (Corollary 2) skip enumeration.
inline double orbit_probability(const GbsEncoding& e, const Orbit& o) {
    if (o.modes() != e.graph.order())
        throw std::invalid_argument("orbit_probability: mode count mismatch");
    if (o.representative.structurally_zero()) return 0.0;
    const IntMatrix a = e.graph.adjacency();
    Int squared_sum = 0;
    OrbitElementStream stream(o.representative);
    DetectionEvent n;
    while (stream.next(n)) {
        const Int h = event_hafnian(a, n);
        squared_sum += h * h;
    }
    return e.prefactor * std::pow(e.c_value, o.total()) *
           static_cast<double>(squared_sum) /
           static_cast<double>(o.representative.count_factorial());
}

// p_G(|n|): sum over all orbits of the given total photon number.
inline double partition_probability(const GbsEncoding& e, unsigned total) {
    double p = 0.0;
    for (const DetectionEvent& rep : partitions(total, e.graph.order()))
        p += orbit_probability(e, make_orbit(rep));
    return p;
}

// Dense 2M x 2M determinant path, used in tests to cross-check the closed
// form for det sigma_Q.
inline double det_sigma_q_dense(const GbsEncoding& e) {
    const std::size_t m = e.graph.order();
    const auto n2 = static_cast<Eigen::Index>(2 * m);
    Eigen::MatrixXd c_mat = Eigen::MatrixXd::Zero(n2, n2);
    const IntMatrix a = e.graph.adjacency();
    const double kd = static_cast<double>(e.k);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const double v =
                e.c_value * (static_cast<double>(a(i, j)) + (i == j ? kd : 0.0));
            c_mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            c_mat(static_cast<Eigen::Index>(m + i),
                  static_cast<Eigen::Index>(m + j)) = v;
        }
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n2, n2);
    for (std::size_t i = 0; i < m; ++i) {
        x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m + i)) = 1.0;
        x(static_cast<Eigen::Index>(m + i), static_cast<Eigen::Index>(i)) = 1.0;
    }
    const Eigen::MatrixXd inner = Eigen::MatrixXd::Identity(n2, n2) - x * c_mat;
    return 1.0 / inner.determinant();
}

}  // namespace gbsgi

#endif
