#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "poincare/calculus.hpp"
#include "poincare/engine.hpp"
#include "poincare/errors.hpp"
#include "poincare/graph.hpp"
#include "poincare/measure.hpp"
#include "poincare/tree.hpp"

namespace poincare {

using Json = nlohmann::ordered_json;

/// Shortest decimal representation that round-trips; used everywhere a
/// number lands in a CSV so reruns are byte-identical.
inline std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string fmt(int v) { return std::to_string(v); }
inline std::string fmt(long v) { return std::to_string(v); }
inline std::string fmt(std::size_t v) { return std::to_string(v); }

// --- graph edge-list format -------------------------------------------------

/// Newline-delimited "u v" edge list with a single "# ..." header carrying
/// the window note.
inline std::string graph_to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "# " << g.window_note() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

/// Parse the edge-list format. The result is treated as a complete finite
/// graph: truncation flags do not survive serialization.
inline Graph graph_from_edge_list(std::istream& in) {
    std::string note;
    std::vector<std::pair<VertexId, VertexId>> edges;
    VertexId max_v = -1;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            note = line.size() > 2 ? line.substr(2) : "";
            continue;
        }
        std::istringstream ls(line);
        long u, v;
        if (!(ls >> u >> v)) throw input_error("edge list: cannot parse line '" + line + "'");
        edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
        max_v = std::max({max_v, static_cast<VertexId>(u), static_cast<VertexId>(v)});
    }
    if (edges.empty()) throw input_error("edge list: no edges");
    GraphConfig cfg;
    cfg.window_note = note;
    return Graph(max_v + 1, edges, std::move(cfg));
}

inline Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open graph file " + path);
    return graph_from_edge_list(in);
}

// --- JSON forms --------------------------------------------------------------

inline Json region_to_json(const Region& e) {
    Json j;
    j["members"] = e.members;
    j["diam"] = e.diam;
    j["connected"] = e.connected;
    j["quasiconvex"] = e.quasiconvex;
    return j;
}

inline Json measure_to_json(const Measure& m) {
    Json j;
    Json w = Json::object();
    for (VertexId x = 0; x < m.size(); ++x) w[std::to_string(x)] = m.at(x);
    j["weights"] = std::move(w);
    if (m.alpha()) j["alpha"] = *m.alpha();
    if (m.beta()) j["beta"] = *m.beta();
    j["kind"] = m.kind();
    return j;
}

inline Json function_to_json(const VertexFunction& f) {
    Json j = Json::object();
    for (VertexId x = 0; x < f.size(); ++x)
        if (f.defined(x)) j[std::to_string(x)] = f.at(x);
    return j;
}

inline Json tree_to_json(const RootedTree& t) {
    Json j;
    Json edges = Json::array();
    for (auto [u, v] : t.graph().edges()) edges.push_back(Json::array({u, v}));
    j["edges"] = std::move(edges);
    j["top"] = t.top();
    j["frontier_level"] = t.frontier_level();
    return j;
}

inline Json report_to_json(const PoincareReport& rep) {
    Json j;
    j["theorem_tag"] = tag_name(rep.tag);
    j["lhs"] = rep.lhs;
    j["rhs"] = rep.rhs;
    j["ratio"] = rep.ratio;
    j["bound"] = rep.bound;
    j["verdict"] = rep.pass ? "pass" : "fail";
    j["seed"] = rep.seed;
    j["region"] = rep.region_note;
    j["p"] = rep.p.str();
    return j;
}

inline Json estimate_to_json(const ConstantEstimate& est) {
    Json j;
    j["lower"] = est.lower;
    if (est.upper) {
        if (std::isinf(*est.upper))
            j["upper"] = "inf";
        else
            j["upper"] = *est.upper;
    }
    j["witness"] = function_to_json(est.witness);
    j["seed"] = est.seed;
    j["restarts"] = est.restarts;
    j["iterations"] = est.iterations;
    return j;
}

// --- CSV ---------------------------------------------------------------------

/// Comma-separated, header row, "." decimals, LF line endings.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out_ << ',';
            out_ << header[i];
        }
        out_ << '\n';
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }
    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write file " + path);
    out << content;
}

} // namespace poincare
