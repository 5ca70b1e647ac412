#ifndef GBSGI_CERTIFICATE_HPP
#define GBSGI_CERTIFICATE_HPP

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbsgi/encoding.hpp"
#include "gbsgi/events.hpp"
#include "gbsgi/graph.hpp"
#include "gbsgi/parallel.hpp"

namespace gbsgi {

inline constexpr std::size_t kDefaultOrbitBudget = 10'000'000;

// Per-orbit certificate record: the exact hafnian multiset, its sums, and
// the n_k-weighted squared-hafnian sums per detector (the photon vector
// before the prefactor * c^|n| / n! normalization).
struct OrbitCertificate {
    Orbit orbit;
    std::map<Int, Int> hafnian_multiset;  // value -> count
    Int hafnian_sum = 0;
    Int squared_sum = 0;
    std::vector<Int> photon_vector;
    bool skipped = false;  // resource budget exceeded; no data computed
};

struct Certificate {
    std::string graph_label;
    std::size_t order = 0;
    Rat c;
    Rat k;
    double det_sigma_q = 1.0;
    double prefactor = 1.0;
    std::vector<OrbitCertificate> records;  // (total, representative) ascending

    bool has_skipped() const {
        for (const auto& r : records)
            if (r.skipped) return true;
        return false;
    }
};

inline OrbitCertificate orbit_certificate(const GbsEncoding& e, const Orbit& o,
                                          unsigned workers = 1,
                                          std::size_t budget = kDefaultOrbitBudget) {
    if (o.modes() != e.graph.order())
        throw std::invalid_argument("orbit_certificate: mode count mismatch");
    OrbitCertificate cert;
    cert.orbit = o;
    cert.photon_vector.assign(o.modes(), Int(0));

    if (o.representative.structurally_zero()) {
        cert.hafnian_multiset[0] = o.size;  // structurally zero orbit
        return cert;
    }
    if (o.size > budget) {
        cert.skipped = true;
        return cert;
    }

    struct Acc {
        std::map<Int, Int> multiset;
        Int sum = 0;
        Int squared = 0;
        std::vector<Int> photon;
    };
    const IntMatrix a = e.graph.adjacency();
    const std::size_t modes = o.modes();
    Acc acc = parallel_orbit_reduce<Acc>(
        o.representative, workers,
        [modes] {
            Acc s;
            s.photon.assign(modes, Int(0));
            return s;
        },
        [&a](Acc& s, const DetectionEvent& n) {
            const Int h = event_hafnian(a, n);
            ++s.multiset[h];
            s.sum += h;
            const Int h2 = h * h;
            s.squared += h2;
            if (h2 != 0)
                for (std::size_t k = 0; k < n.modes(); ++k)
                    if (n.counts[k] != 0) s.photon[k] += h2 * n.counts[k];
        },
        [](Acc& into, const Acc& from) {
            for (const auto& [v, c] : from.multiset) into.multiset[v] += c;
            into.sum += from.sum;
            into.squared += from.squared;
            for (std::size_t k = 0; k < into.photon.size(); ++k)
                into.photon[k] += from.photon[k];
        });
    cert.hafnian_multiset = std::move(acc.multiset);
    cert.hafnian_sum = std::move(acc.sum);
    cert.squared_sum = std::move(acc.squared);
    cert.photon_vector = std::move(acc.photon);
    return cert;
}

inline double orbit_certificate_probability(const GbsEncoding& e,
                                            const OrbitCertificate& oc) {
    return e.prefactor * std::pow(e.c_value, oc.orbit.total()) *
           static_cast<double>(oc.squared_sum) /
           static_cast<double>(oc.orbit.representative.count_factorial());
}

// <n_k> per detector, normalized by prefactor * c^|n| / n!.
inline std::vector<double> photon_distribution(const GbsEncoding& e,
                                               const OrbitCertificate& oc) {
    const double scale =
        e.prefactor * std::pow(e.c_value, oc.orbit.total()) /
        static_cast<double>(oc.orbit.representative.count_factorial());
    std::vector<double> out;
    out.reserve(oc.photon_vector.size());
    for (const Int& v : oc.photon_vector)
        out.push_back(scale * static_cast<double>(v));
    return out;
}

// <<n_k>>: the photon distribution summed over every orbit of one total.
inline std::vector<double> coarse_photon_distribution(const GbsEncoding& e,
                                                      unsigned total,
                                                      unsigned workers = 1) {
    if (total % 2 != 0)
        throw std::invalid_argument("coarse_photon_distribution: odd total");
    std::vector<double> out(e.graph.order(), 0.0);
    for (const DetectionEvent& rep : partitions(total, e.graph.order())) {
        const OrbitCertificate oc =
            orbit_certificate(e, make_orbit(rep), workers);
        const auto pd = photon_distribution(e, oc);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += pd[k];
    }
    return out;
}

// Stabilizer-weighted hafnian sum: |Stab(n)| * sum over the orbit. Exactly
// proportional to the symmetrized square-root-probability sums, with the
// common c^{|n|/2} / (sqrt(n!) det^{1/4}) factor stripped; the reduction uses
// the non-negativity of 0/1-matrix hafnians.
inline Int symmetrized_moment_sum(const OrbitCertificate& oc) {
    const Int stabilizer =
        factorial(static_cast<unsigned>(oc.orbit.modes())) / oc.orbit.size;
    return stabilizer * oc.hafnian_sum;
}

inline Certificate make_certificate(const GbsEncoding& e,
                                    const std::vector<Orbit>& orbits,
                                    unsigned workers = 1,
                                    std::size_t budget = kDefaultOrbitBudget) {
    Certificate cert;
    cert.graph_label = e.graph.label();
    cert.order = e.graph.order();
    cert.c = e.c;
    cert.k = e.k;
    cert.det_sigma_q = e.det_sigma_q;
    cert.prefactor = e.prefactor;
    for (const Orbit& o : orbits)
        cert.records.push_back(orbit_certificate(e, o, workers, budget));
    std::sort(cert.records.begin(), cert.records.end(),
              [](const OrbitCertificate& a, const OrbitCertificate& b) {
                  if (a.orbit.total() != b.orbit.total())
                      return a.orbit.total() < b.orbit.total();
                  return a.orbit.representative < b.orbit.representative;
              });
    return cert;
}

// All orbits with even totals 2..max_total on `modes` modes.
inline std::vector<Orbit> orbit_schedule(std::size_t modes, unsigned max_total) {
    std::vector<Orbit> orbits;
    for (unsigned t = 2; t <= max_total; t += 2)
        for (const DetectionEvent& rep : partitions(t, modes))
            orbits.push_back(make_orbit(rep));
    return orbits;
}

enum class Verdict { kDistinguished, kUndistinguishedUpToLimit };
enum class Criterion { kMultiset, kSum, kOrbitProbability, kPhotonVectorSorted };

inline std::string criterion_name(Criterion c) {
    switch (c) {
        case Criterion::kMultiset: return "multiset";
        case Criterion::kSum: return "sum";
        case Criterion::kOrbitProbability: return "orbit_probability";
        case Criterion::kPhotonVectorSorted: return "photon_vector_sorted";
    }
    return "?";
}

struct OrbitComparison {
    DetectionEvent representative;
    bool skipped = false;
    bool multiset_equal = true;
    bool sum_equal = true;
    bool probability_equal = true;
    bool photon_sorted_equal = true;
};

struct ComparisonReport {
    Verdict verdict = Verdict::kUndistinguishedUpToLimit;
    std::optional<Orbit> threshold_orbit;
    std::optional<Criterion> separating_criterion;
    std::vector<OrbitComparison> details;
};

// Per orbit, strongest criterion first: exact hafnian multiset, exact
// hafnian sum, orbit probability, sorted photon vector. Equality up to the
// computed depth is explicitly NOT an isomorphism verdict.
inline ComparisonReport compare_certificates(const Certificate& c1,
                                             const Certificate& c2) {
    if (c1.order != c2.order || c1.c != c2.c || c1.k != c2.k)
        throw std::invalid_argument(
            "compare_certificates: encoding parameters differ");
    if (c1.records.size() != c2.records.size())
        throw std::invalid_argument("compare_certificates: orbit sets differ");
    const bool det_close =
        std::abs(c1.det_sigma_q - c2.det_sigma_q) <=
        1e-12 * std::max(std::abs(c1.det_sigma_q), std::abs(c2.det_sigma_q));

    ComparisonReport report;
    for (std::size_t i = 0; i < c1.records.size(); ++i) {
        const OrbitCertificate& a = c1.records[i];
        const OrbitCertificate& b = c2.records[i];
        if (a.orbit.representative != b.orbit.representative)
            throw std::invalid_argument("compare_certificates: orbit sets differ");

        OrbitComparison cmp;
        cmp.representative = a.orbit.representative;
        if (a.skipped || b.skipped) {
            cmp.skipped = true;
            report.details.push_back(cmp);
            continue;
        }
        cmp.multiset_equal = a.hafnian_multiset == b.hafnian_multiset;
        cmp.sum_equal = a.hafnian_sum == b.hafnian_sum;
        // same (c, k) by precondition, so orbit probabilities coincide iff
        // the exact squared sums do and the determinant prefactors agree
        cmp.probability_equal = det_close && a.squared_sum == b.squared_sum;
        auto pa = a.photon_vector, pb = b.photon_vector;
        std::sort(pa.begin(), pa.end());
        std::sort(pb.begin(), pb.end());
        cmp.photon_sorted_equal = pa == pb;
        report.details.push_back(cmp);

        if (!cmp.multiset_equal || !cmp.sum_equal || !cmp.probability_equal ||
            !cmp.photon_sorted_equal) {
            report.verdict = Verdict::kDistinguished;
            report.threshold_orbit = a.orbit;
            if (!cmp.multiset_equal)
                report.separating_criterion = Criterion::kMultiset;
            else if (!cmp.sum_equal)
                report.separating_criterion = Criterion::kSum;
            else if (!cmp.probability_equal)
                report.separating_criterion = Criterion::kOrbitProbability;
            else
                report.separating_criterion = Criterion::kPhotonVectorSorted;
            break;
        }
    }
    return report;
}

// Certificate of the k-fold disjoint union A^{(+)k}; a necessary-condition
// fallback when base certificates fail to separate.
inline Certificate hierarchy_certificate(const Graph& g, std::size_t copies,
                                         const std::vector<Orbit>& orbits,
                                         std::optional<Rat> c = std::nullopt,
                                         Rat k = Rat(0), unsigned workers = 1,
                                         std::size_t budget = kDefaultOrbitBudget) {
    if (copies < 1)
        throw std::invalid_argument("hierarchy_certificate: copies must be >= 1");
    const Graph stacked = copies == 1 ? g : g.disjoint_power(copies);
    return make_certificate(encode(stacked, c, k), orbits, workers, budget);
}

}  // namespace gbsgi

#endif
