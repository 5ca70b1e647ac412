// gbsgi: hafnian-certificate pipelines for graph non-isomorphism testing.
//
// Subcommands:
//   certify        write one certificate JSON per input graph
//   compare        lazily compare two graphs, stop at the first separation
//   family         refine a multi-graph family into distinguished classes
//   probabilities  CSV of orbit probabilities for plotting
//   orbits         list orbit representatives for a photon total
//
// Exit codes: 0 completed, 2 partial (orbit budget skipped something),
// 1 input error.

#include <CLI11.hpp>

#include <cctype>
#include <filesystem>
#include <iomanip>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gbsgi/certificate.hpp"
#include "gbsgi/encoding.hpp"
#include "gbsgi/graph.hpp"
#include "gbsgi/graph6.hpp"
#include "gbsgi/serialize.hpp"

namespace {

using namespace gbsgi;

struct RunConfig {
    std::string format = "graph6";
    std::optional<std::string> c_text;
    std::string k_text = "0";
    unsigned max_photons = 4;
    std::optional<std::string> orbit_text;
    unsigned workers = 1;
    std::string cache_dir;
    std::string output = "text";
    std::size_t budget = kDefaultOrbitBudget;

    std::optional<Rat> c() const {
        if (!c_text) return std::nullopt;
        return parse_rational(*c_text);
    }
    Rat k() const { return parse_rational(k_text); }
};

std::vector<Orbit> schedule_for(const RunConfig& cfg, std::size_t modes) {
    if (cfg.orbit_text) {
        DetectionEvent rep;
        std::stringstream ss(*cfg.orbit_text);
        std::string tok;
        while (std::getline(ss, tok, ','))
            rep.counts.push_back(static_cast<unsigned>(std::stoul(tok)));
        if (rep.counts.size() > modes)
            throw std::invalid_argument("--orbit has more entries than modes");
        rep.counts.resize(modes, 0u);  // pad with silent detectors
        if (rep.total() % 2 != 0)
            throw std::invalid_argument("--orbit total must be even");
        return {make_orbit(rep)};
    }
    if (cfg.max_photons < 2 || cfg.max_photons % 2 != 0)
        throw std::invalid_argument("--max-photons must be even and >= 2");
    return orbit_schedule(modes, cfg.max_photons);
}

// Per-orbit computation with the optional on-disk cache in front.
OrbitCertificate cached_orbit_certificate(const RunConfig& cfg,
                                          const GbsEncoding& e,
                                          const Orbit& o) {
    if (cfg.cache_dir.empty())
        return orbit_certificate(e, o, cfg.workers, cfg.budget);
    const std::string key =
        orbit_cache_key(e.graph, e.c, e.k, o.representative);
    if (auto hit = cache_load_orbit(cfg.cache_dir, key);
        hit && hit->orbit.representative == o.representative && !hit->skipped)
        return *hit;
    OrbitCertificate oc = orbit_certificate(e, o, cfg.workers, cfg.budget);
    if (!oc.skipped) cache_store_orbit(cfg.cache_dir, key, oc);
    return oc;
}

Certificate build_certificate(const RunConfig& cfg, const GbsEncoding& e,
                              const std::vector<Orbit>& orbits) {
    Certificate cert;
    cert.graph_label = e.graph.label();
    cert.order = e.graph.order();
    cert.c = e.c;
    cert.k = e.k;
    cert.det_sigma_q = e.det_sigma_q;
    cert.prefactor = e.prefactor;
    for (const Orbit& o : orbits)
        cert.records.push_back(cached_orbit_certificate(cfg, e, o));
    return cert;
}

std::string sanitize_label(const std::string& label) {
    std::string out;
    for (char ch : label)
        out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' ||
                ch == '_')
                   ? ch
                   : '_';
    return out.empty() ? "graph" : out;
}

int cmd_certify(const RunConfig& cfg, const std::vector<std::string>& inputs,
                const std::string& out_dir) {
    bool partial = false;
    std::filesystem::create_directories(out_dir);
    for (const std::string& path : inputs) {
        for (const Graph& g : load_graphs(path, cfg.format)) {
            const GbsEncoding e = encode(g, cfg.c(), cfg.k());
            const Certificate cert =
                build_certificate(cfg, e, schedule_for(cfg, g.order()));
            partial = partial || cert.has_skipped();
            const auto out_path = std::filesystem::path(out_dir) /
                                  (sanitize_label(g.label()) + ".cert.json");
            std::ofstream out(out_path);
            out << certificate_to_json(cert, &e).dump(2) << '\n';
            std::cout << "wrote " << out_path.string() << '\n';
        }
    }
    return partial ? 2 : 0;
}

void print_report(const ComparisonReport& rep, const std::string& la,
                  const std::string& lb, const std::string& output) {
    if (output == "json") {
        json j;
        j["graph_a"] = la;
        j["graph_b"] = lb;
        j["verdict"] = rep.verdict == Verdict::kDistinguished
                           ? "DISTINGUISHED"
                           : "UNDISTINGUISHED_UP_TO_LIMIT";
        if (rep.threshold_orbit) {
            j["threshold_orbit"] = rep.threshold_orbit->representative.counts;
            j["separating_criterion"] = criterion_name(*rep.separating_criterion);
        }
        json details = json::array();
        for (const OrbitComparison& d : rep.details) {
            json dj;
            dj["orbit"] = d.representative.counts;
            if (d.skipped) {
                dj["skipped"] = true;
            } else {
                dj["multiset_equal"] = d.multiset_equal;
                dj["sum_equal"] = d.sum_equal;
                dj["probability_equal"] = d.probability_equal;
                dj["photon_vector_sorted_equal"] = d.photon_sorted_equal;
            }
            details.push_back(dj);
        }
        j["details"] = details;
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::cout << la << " vs " << lb << ": ";
    if (rep.verdict == Verdict::kDistinguished) {
        std::cout << "DISTINGUISHED at orbit ("
                  << rep.threshold_orbit->representative.str()
                  << "), criterion " << criterion_name(*rep.separating_criterion)
                  << '\n';
    } else {
        std::cout << "UNDISTINGUISHED_UP_TO_LIMIT (not an isomorphism verdict)"
                  << '\n';
    }
    for (const OrbitComparison& d : rep.details) {
        std::cout << "  orbit (" << d.representative.str() << "): ";
        if (d.skipped) {
            std::cout << "skipped (budget)\n";
            continue;
        }
        std::cout << "multiset " << (d.multiset_equal ? "=" : "!=") << ", sum "
                  << (d.sum_equal ? "=" : "!=") << ", probability "
                  << (d.probability_equal ? "=" : "!=") << ", photon(sorted) "
                  << (d.photon_sorted_equal ? "=" : "!=") << '\n';
    }
}

int cmd_compare(const RunConfig& cfg, const std::string& path_a,
                const std::string& path_b) {
    std::vector<Graph> graphs = load_graphs(path_a, cfg.format);
    if (!path_b.empty()) {
        auto more = load_graphs(path_b, cfg.format);
        for (auto& g : more) {
            g.set_label(g.label() + "b");
            graphs.push_back(std::move(g));
        }
    }
    if (graphs.size() < 2)
        throw std::invalid_argument("compare needs two graphs");
    const Graph& ga = graphs[0];
    const Graph& gb = graphs[1];
    if (ga.order() != gb.order())
        throw std::invalid_argument("compare: graph orders differ");
    if (!is_cospectral(ga, gb)) {
        std::cout << ga.label() << " vs " << gb.label()
                  << ": DISTINGUISHED (spectra differ; trivially "
                     "non-isomorphic, no certificates needed)\n";
        return 0;
    }

    const GbsEncoding ea = encode(ga, cfg.c(), cfg.k());
    const GbsEncoding eb = encode(gb, cfg.c(), cfg.k());
    const std::vector<Orbit> schedule = schedule_for(cfg, ga.order());

    // increasing-|n| lazy search: certify one orbit at a time on both sides
    ComparisonReport merged;
    bool partial = false;
    for (const Orbit& o : schedule) {
        Certificate ca = build_certificate(cfg, ea, {o});
        Certificate cb = build_certificate(cfg, eb, {o});
        partial = partial || ca.has_skipped() || cb.has_skipped();
        ComparisonReport rep = compare_certificates(ca, cb);
        merged.details.insert(merged.details.end(), rep.details.begin(),
                              rep.details.end());
        if (rep.verdict == Verdict::kDistinguished) {
            merged.verdict = rep.verdict;
            merged.threshold_orbit = rep.threshold_orbit;
            merged.separating_criterion = rep.separating_criterion;
            break;
        }
    }
    print_report(merged, ga.label(), gb.label(), cfg.output);
    if (merged.verdict == Verdict::kDistinguished) return 0;
    return partial ? 2 : 0;
}

// Class-wise greedy refinement: all graphs are certified on one orbit, then
// every class splits by exact record equality. Avoids all-pairs hafnian
// recomputation.
int cmd_family(const RunConfig& cfg, const std::string& path) {
    const std::vector<Graph> graphs = load_graphs(path, cfg.format);
    if (graphs.empty()) throw std::invalid_argument("family: empty input");
    for (std::size_t i = 1; i < graphs.size(); ++i)
        if (graphs[i].order() != graphs[0].order())
            throw std::invalid_argument("family: mixed graph orders");

    std::vector<GbsEncoding> encodings;
    for (const Graph& g : graphs) encodings.push_back(encode(g, cfg.c(), cfg.k()));

    std::vector<std::vector<std::size_t>> classes{
        std::vector<std::size_t>(graphs.size())};
    for (std::size_t i = 0; i < graphs.size(); ++i) classes[0][i] = i;

    const std::vector<Orbit> schedule = schedule_for(cfg, graphs[0].order());
    bool partial = false;
    struct OrbitSplit {
        std::string orbit;
        std::size_t newly_distinguished = 0;
    };
    std::vector<OrbitSplit> splits;

    for (const Orbit& o : schedule) {
        if (classes.size() == graphs.size()) break;  // fully refined
        std::size_t before = classes.size();
        std::vector<std::vector<std::size_t>> next;
        for (const auto& cls : classes) {
            if (cls.size() == 1) {
                next.push_back(cls);
                continue;
            }
            // signature: full serialized record (multiset, sums, sorted photon)
            std::map<std::string, std::vector<std::size_t>> buckets;
            for (std::size_t gi : cls) {
                OrbitCertificate oc =
                    cached_orbit_certificate(cfg, encodings[gi], o);
                if (oc.skipped) {
                    partial = true;
                    buckets["skipped"].push_back(gi);
                    continue;
                }
                std::sort(oc.photon_vector.begin(), oc.photon_vector.end());
                buckets[orbit_certificate_to_json(oc).dump()].push_back(gi);
            }
            for (auto& [sig, members] : buckets) next.push_back(members);
        }
        classes = std::move(next);
        if (classes.size() > before)
            splits.push_back({o.representative.str(), classes.size() - before});
    }

    std::sort(classes.begin(), classes.end());
    if (cfg.output == "json") {
        json j;
        json cj = json::array();
        for (const auto& cls : classes) {
            json labels = json::array();
            for (std::size_t gi : cls) labels.push_back(graphs[gi].label());
            cj.push_back(labels);
        }
        j["classes"] = cj;
        json sj = json::array();
        for (const auto& s : splits)
            sj.push_back({{"orbit", s.orbit},
                          {"newly_distinguished", s.newly_distinguished}});
        j["splits"] = sj;
        j["partial"] = partial;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << graphs.size() << " graphs -> " << classes.size()
                  << (classes.size() == 1 ? " class\n" : " classes\n");
        for (std::size_t ci = 0; ci < classes.size(); ++ci) {
            std::cout << "  class " << ci << ":";
            for (std::size_t gi : classes[ci])
                std::cout << ' ' << graphs[gi].label();
            std::cout << '\n';
        }
        for (const auto& s : splits)
            std::cout << "  orbit (" << s.orbit << "): +"
                      << s.newly_distinguished << " newly distinguished\n";
        if (partial) std::cout << "  (partial: some orbits over budget)\n";
    }
    return partial ? 2 : 0;
}

int cmd_probabilities(const RunConfig& cfg, const std::string& path) {
    const std::vector<Graph> graphs = load_graphs(path, cfg.format);
    if (graphs.size() != 1)
        throw std::invalid_argument("probabilities: expected a single graph");
    const GbsEncoding e = encode(graphs[0], cfg.c(), cfg.k());
    std::cout << std::setprecision(17)
              << "total_photons,orbit_representative,orbit_size,orbit_probability\n";
    bool partial = false;
    std::vector<Orbit> orbits;
    if (cfg.orbit_text) {
        orbits = schedule_for(cfg, e.graph.order());
    } else {
        DetectionEvent vac;
        vac.counts.assign(e.graph.order(), 0u);
        orbits.push_back(make_orbit(vac));
        for (const Orbit& o : orbit_schedule(e.graph.order(), cfg.max_photons))
            orbits.push_back(o);
    }
    for (const Orbit& o : orbits) {
        if (o.total() == 0) {
            std::cout << "0," << o.representative.str() << ",1," << e.prefactor
                      << '\n';
            continue;
        }
        if (o.representative.structurally_zero()) continue;
        const OrbitCertificate oc = cached_orbit_certificate(cfg, e, o);
        if (oc.skipped) {
            partial = true;
            continue;
        }
        std::cout << o.total() << ',' << o.representative.str() << ',' << o.size
                  << ',' << orbit_certificate_probability(e, oc) << '\n';
    }
    return partial ? 2 : 0;
}

int cmd_orbits(unsigned total, std::size_t modes) {
    std::cout << "representative,size,zero_probability\n";
    if (total == 0) {
        DetectionEvent vac;
        vac.counts.assign(modes, 0u);
        std::cout << vac.str() << ",1,no\n";
        return 0;
    }
    for (const DetectionEvent& rep : partitions(total, modes)) {
        const Orbit o = make_orbit(rep);
        std::cout << o.representative.str() << ',' << o.size << ','
                  << (rep.structurally_zero() ? "yes" : "no") << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hafnian certificates for graph non-isomorphism"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--format", cfg.format, "input format")
        ->check(CLI::IsMember({"graph6", "json"}));
    std::string c_text;
    auto* c_opt = app.add_option("--c", c_text, "scaling constant (rational or decimal)");
    app.add_option("--k", cfg.k_text, "diagonal shift");
    app.add_option("--max-photons", cfg.max_photons, "largest |n| (even)");
    std::string orbit_text;
    auto* orbit_opt = app.add_option("--orbit", orbit_text,
                                     "explicit orbit, e.g. \"2,2,2,2\"");
    app.add_option("--workers", cfg.workers, "worker threads");
    app.add_option("--cache-dir", cfg.cache_dir, "certificate cache directory");
    app.add_option("--output", cfg.output, "report format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--budget", cfg.budget, "max orbit elements per orbit");

    auto* certify = app.add_subcommand("certify", "write certificate JSON files");
    std::vector<std::string> certify_inputs;
    std::string out_dir = ".";
    certify->add_option("inputs", certify_inputs, "graph files")->required();
    certify->add_option("--out-dir", out_dir, "output directory");

    auto* compare = app.add_subcommand("compare", "compare two graphs");
    std::string path_a, path_b;
    compare->add_option("a", path_a, "first graph file (or a two-graph file)")
        ->required();
    compare->add_option("b", path_b, "second graph file");

    auto* family = app.add_subcommand("family", "refine a graph family");
    std::string family_path;
    family->add_option("input", family_path, "multi-graph file")->required();

    auto* probabilities =
        app.add_subcommand("probabilities", "orbit probability CSV");
    std::string prob_path;
    probabilities->add_option("input", prob_path, "single-graph file")->required();

    auto* orbits = app.add_subcommand("orbits", "list orbits of a photon total");
    unsigned orbits_total = 0;
    std::size_t orbits_modes = 0;
    orbits->add_option("total", orbits_total, "total photon number (even)")
        ->required();
    orbits->add_option("modes", orbits_modes, "number of modes")->required();

    CLI11_PARSE(app, argc, argv);
    if (*c_opt) cfg.c_text = c_text;
    if (*orbit_opt) cfg.orbit_text = orbit_text;

    try {
        if (*certify) return cmd_certify(cfg, certify_inputs, out_dir);
        if (*compare) return cmd_compare(cfg, path_a, path_b);
        if (*family) return cmd_family(cfg, family_path);
        if (*probabilities) return cmd_probabilities(cfg, prob_path);
        if (*orbits) return cmd_orbits(orbits_total, orbits_modes);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
    return 1;
}
