#ifndef GBSGI_SERIALIZE_HPP
#define GBSGI_SERIALIZE_HPP

#include <json.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbsgi/certificate.hpp"
#include "gbsgi/graph.hpp"
#include "gbsgi/graph6.hpp"

namespace gbsgi {

using json = nlohmann::ordered_json;

// Big integers travel as decimal strings: JSON numbers stop being exact far
// below the hafnian sums that certificates carry.
inline json orbit_certificate_to_json(const OrbitCertificate& oc,
                                      const GbsEncoding* e = nullptr) {
    json j;
    j["orbit"] = oc.orbit.representative.counts;
    j["size"] = oc.orbit.size.str();
    if (oc.skipped) {
        j["skipped"] = true;
        return j;
    }
    json multiset = json::object();
    for (const auto& [value, count] : oc.hafnian_multiset)
        multiset[value.str()] = count.str();
    j["multiset"] = multiset;
    j["sum"] = oc.hafnian_sum.str();
    j["squared_sum"] = oc.squared_sum.str();
    std::vector<std::string> photon;
    photon.reserve(oc.photon_vector.size());
    for (const Int& v : oc.photon_vector) photon.push_back(format_rational(Rat(v)));
    j["photon_vector"] = photon;
    if (e) j["probability"] = orbit_certificate_probability(*e, oc);
    return j;
}

inline json certificate_to_json(const Certificate& cert,
                                const GbsEncoding* e = nullptr) {
    json j;
    j["graph_label"] = cert.graph_label;
    j["order"] = cert.order;
    j["c"] = format_rational(cert.c);
    j["k"] = format_rational(cert.k);
    j["det_sigma_q"] = cert.det_sigma_q;
    j["prefactor"] = cert.prefactor;
    json records = json::array();
    for (const OrbitCertificate& oc : cert.records)
        records.push_back(orbit_certificate_to_json(oc, e));
    j["records"] = records;
    return j;
}

inline OrbitCertificate orbit_certificate_from_json(const json& j) {
    OrbitCertificate oc;
    DetectionEvent rep;
    rep.counts = j.at("orbit").get<std::vector<unsigned>>();
    oc.orbit = make_orbit(rep);
    if (oc.orbit.size != Int(j.at("size").get<std::string>()))
        throw std::invalid_argument("orbit certificate: inconsistent orbit size");
    oc.photon_vector.assign(oc.orbit.modes(), Int(0));
    if (j.value("skipped", false)) {
        oc.skipped = true;
        return oc;
    }
    for (const auto& [value, count] : j.at("multiset").items())
        oc.hafnian_multiset[Int(value)] = Int(count.get<std::string>());
    oc.hafnian_sum = Int(j.at("sum").get<std::string>());
    oc.squared_sum = Int(j.at("squared_sum").get<std::string>());
    const auto photon = j.at("photon_vector").get<std::vector<std::string>>();
    if (photon.size() != oc.orbit.modes())
        throw std::invalid_argument("orbit certificate: photon vector length");
    for (std::size_t k = 0; k < photon.size(); ++k) {
        const Rat r = parse_rational(photon[k]);
        oc.photon_vector[k] = boost::multiprecision::numerator(r);
        if (boost::multiprecision::denominator(r) != 1)
            throw std::invalid_argument("orbit certificate: non-integer photon entry");
    }
    return oc;
}

inline Certificate certificate_from_json(const json& j) {
    Certificate cert;
    cert.graph_label = j.at("graph_label").get<std::string>();
    cert.order = j.at("order").get<std::size_t>();
    cert.c = parse_rational(j.at("c").get<std::string>());
    cert.k = parse_rational(j.at("k").get<std::string>());
    cert.det_sigma_q = j.at("det_sigma_q").get<double>();
    cert.prefactor = j.at("prefactor").get<double>();
    for (const json& rec : j.at("records"))
        cert.records.push_back(orbit_certificate_from_json(rec));
    return cert;
}

// {"order": int, "edges": [[i,j], ...], "label": string}; vertices 0-indexed.
inline Graph graph_from_json(const json& j) {
    const auto order = j.at("order").get<std::size_t>();
    Graph g(order, j.value("label", std::string{}));
    for (const json& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("graph json: edge must be a pair");
        const auto u = e[0].get<std::size_t>();
        const auto v = e[1].get<std::size_t>();
        if (u >= order || v >= order || u == v) {
            std::ostringstream msg;
            msg << "graph json: bad edge [" << u << "," << v << "] for order "
                << order;
            throw std::invalid_argument(msg.str());
        }
        g.add_edge(u, v);
    }
    return g;
}

inline json graph_to_json(const Graph& g) {
    json j;
    j["order"] = g.order();
    json edges = json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = edges;
    j["label"] = g.label();
    return j;
}

// One graph per line (graph6) or a JSON array of graph objects / one object.
inline std::vector<Graph> load_graphs(const std::string& path,
                                      const std::string& format) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    if (format == "graph6") {
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_graph6_file(buf.str());
    }
    if (format == "json") {
        json j = json::parse(in);
        std::vector<Graph> graphs;
        if (j.is_array())
            for (const json& item : j) graphs.push_back(graph_from_json(item));
        else
            graphs.push_back(graph_from_json(j));
        for (std::size_t i = 0; i < graphs.size(); ++i)
            if (graphs[i].label().empty())
                graphs[i].set_label("g" + std::to_string(i));
        return graphs;
    }
    throw std::invalid_argument("unknown format: " + format);
}

// ---- per-orbit certificate cache -----------------------------------------
//
// Key: content hash of (canonical graph6, c, k, orbit representative).
// Writes go to a temp file and rename into place, so concurrent processes
// sharing a cache directory never observe partial files.

inline std::string orbit_cache_key(const Graph& g, const Rat& c, const Rat& k,
                                   const DetectionEvent& rep) {
    std::ostringstream blob;
    blob << emit_graph6(g) << '|' << format_rational(c) << '|'
         << format_rational(k) << '|';
    for (unsigned n : rep.counts) blob << n << ',';
    std::ostringstream key;
    key << std::hex << fnv1a(blob.str());
    return key.str();
}

inline std::optional<OrbitCertificate> cache_load_orbit(
    const std::filesystem::path& dir, const std::string& key) {
    std::ifstream in(dir / (key + ".json"));
    if (!in) return std::nullopt;
    try {
        return orbit_certificate_from_json(json::parse(in));
    } catch (const std::exception&) {
        return std::nullopt;  // corrupt entry: recompute
    }
}

inline void cache_store_orbit(const std::filesystem::path& dir,
                              const std::string& key,
                              const OrbitCertificate& oc) {
    std::filesystem::create_directories(dir);
    const auto tmp = dir / (key + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp);
        out << orbit_certificate_to_json(oc).dump(2) << '\n';
    }
    std::filesystem::rename(tmp, dir / (key + ".json"));
}

}  // namespace gbsgi

#endif
