#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qwstat/bounds.hpp"
#include "qwstat/common.hpp"
#include "qwstat/graph.hpp"
#include "qwstat/stationary.hpp"
#include "qwstat/walk.hpp"

namespace qwstat {

using json = nlohmann::ordered_json;

/// Full-precision decimal rendering; 17 significant digits round-trip a
/// double exactly.
inline std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// Edge-list and marked-set files. One edge per line as two whitespace
// separated nonnegative integers; '#' starts a comment line; blank lines are
// ignored. Marked-set files hold one vertex label per line.
// ---------------------------------------------------------------------------

inline std::vector<std::pair<std::int64_t, std::int64_t>> read_edge_list(std::istream& in) {
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::int64_t u, v;
    if (!(ls >> u >> v))
      fail(errc::parse_error, "edge list line " + std::to_string(lineno) + ": expected two integers");
    std::string rest;
    if (ls >> rest) fail(errc::parse_error, "edge list line " + std::to_string(lineno) + ": trailing tokens");
    if (u < 0 || v < 0) fail(errc::parse_error, "edge list line " + std::to_string(lineno) + ": negative label");
    edges.emplace_back(u, v);
  }
  return edges;
}

inline Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open graph file " + path);
  return load_graph(read_edge_list(in));
}

inline std::vector<std::int64_t> read_marked_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open marked-set file " + path);
  std::vector<std::int64_t> labels;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::int64_t v;
    std::string rest;
    if (!(ls >> v) || (ls >> rest))
      fail(errc::parse_error, "marked-set line " + std::to_string(lineno) + ": expected one integer");
    labels.push_back(v);
  }
  return labels;
}

/// Comma separated labels, e.g. "0,1,5".
inline std::vector<std::int64_t> parse_marked_list(const std::string& text) {
  std::vector<std::int64_t> labels;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t pos = 0;
      labels.push_back(std::stoll(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(errc::parse_error, "bad marked vertex '" + item + "'");
    }
  }
  if (labels.empty()) fail(errc::parse_error, "empty marked list");
  return labels;
}

/// Translates external labels to compact vertex ids.
inline std::vector<int> to_vertex_ids(const Graph& g, const std::vector<std::int64_t>& labels) {
  std::vector<int> ids;
  ids.reserve(labels.size());
  for (std::int64_t label : labels) {
    const int v = g.vertex_of_label(label);
    if (v < 0) fail(errc::bad_vertex, "marked vertex " + std::to_string(label) + " is not in the graph");
    ids.push_back(v);
  }
  return ids;
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& [u, v] : g.edges) out << g.labels[u] << ' ' << g.labels[v] << '\n';
}

inline void write_marked_set(std::ostream& out, const Graph& g, const std::vector<int>& marked) {
  for (int v : marked) out << g.labels[v] << '\n';
}

/// Arc-amplitude CSV: one row per directed arc, full decimal precision so the
/// state re-verifies bit-exactly.
inline void write_state_csv(std::ostream& out, const Graph& g, const StationaryState& state) {
  const ArcSpace arcs = ArcSpace::build(g);
  out << "from,to,amplitude\n";
  for (Eigen::Index k = 0; k < arcs.total; ++k)
    out << g.labels[arcs.tail[k]] << ',' << g.labels[arcs.head[k]] << ',' << fmt_double(state.arc_amplitudes[k])
        << '\n';
}

inline void write_trace_csv(std::ostream& out, const EvolutionTrace& trace) {
  out << "t,p_M\n";
  for (Eigen::Index t = 0; t < trace.p_series.size(); ++t)
    out << t << ',' << fmt_double(trace.p_series[t]) << '\n';
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot open output file " + path);
  out << contents;
  if (!out) fail(errc::io_error, "write failed for " + path);
}

// ---------------------------------------------------------------------------
// Report documents. The JSON form uses insertion-ordered keys so identical
// inputs serialize byte-identically; the text form mirrors it as key: value
// lines.
// ---------------------------------------------------------------------------

namespace detail {
inline json labels_of(const Graph& g, const std::vector<int>& vs) {
  json arr = json::array();
  for (int v : vs) arr.push_back(g.labels[v]);
  return arr;
}
}  // namespace detail

inline json analysis_to_json(const Graph& g, const MarkedAnalysis& ma, const UnmarkedDecomposition& ud,
                             const ExistenceVerdict& verdict) {
  json doc;
  doc["n"] = g.n;
  doc["m"] = g.edge_count();
  doc["marked"] = detail::labels_of(g, ma.marked);
  doc["bipartite"] = ma.bipartite;
  if (ma.bipartite) {
    doc["part1"] = detail::labels_of(g, ma.part1);
    doc["part2"] = detail::labels_of(g, ma.part2);
    doc["degsum1"] = ma.degsum1;
    doc["degsum2"] = ma.degsum2;
  }
  doc["marked_internal_edges"] = ma.e_m;
  doc["boundary_edges"] = ma.d_boundary;
  json comps = json::array();
  for (int i = 0; i < ud.r(); ++i) {
    json c;
    c["vertices"] = detail::labels_of(g, ud.components[i]);
    c["internal_edges"] = ud.internal_edges[i];
    c["k1"] = ud.boundary(i, 0);
    c["k2"] = ud.boundary(i, 1);
    comps.push_back(std::move(c));
  }
  doc["components"] = std::move(comps);
  doc["exists"] = verdict.exists;
  doc["reason"] = to_string(verdict.reason);
  return doc;
}

inline json stationary_to_json(const Graph& g, const StationaryReport& report) {
  json doc;
  doc["exists"] = report.exists;
  doc["reason"] = to_string(report.reason);
  if (report.state) {
    const StationaryState& st = *report.state;
    json a = json::array();
    for (Eigen::Index i = 0; i < st.component_amps.a.size(); ++i) a.push_back(st.component_amps.a[i]);
    doc["a"] = std::move(a);
    doc["zero_overlap_fallback"] = st.component_amps.zero_overlap_fallback;
    json c = json::array();
    for (const auto& [edge, amp] : st.marked_edge_amps) {
      json entry;
      entry["u"] = g.labels[edge.first];
      entry["v"] = g.labels[edge.second];
      entry["amplitude"] = amp;
      c.push_back(std::move(entry));
    }
    doc["c"] = std::move(c);
    doc["normalized"] = st.normalized;
    doc["overlap"] = st.overlap_with_initial;
    doc["residual_norm"] = report.residual_norm;
  }
  return doc;
}

inline json trace_to_json(const EvolutionTrace& trace) {
  json doc;
  doc["steps"] = trace.p_series.size() - 1;
  doc["p0"] = trace.p_series[0];
  doc["max_p"] = trace.max_p;
  doc["argmax_t"] = trace.argmax_t;
  return doc;
}

inline json bound_to_json(const BoundReport& report) {
  json doc;
  doc["a_bar"] = report.a_bar;
  doc["a_bar_uncorrected"] = report.a_bar_uncorrected;
  doc["denom"] = report.denom;
  doc["c_sq_sum"] = report.c_sq_sum;
  doc["bound"] = report.bound;
  doc["bound_clamped"] = report.bound_clamped;
  if (report.sim_max_p) {
    doc["sim_max_p"] = *report.sim_max_p;
    doc["violation"] = report.violation;
  }
  return doc;
}

/// Flat key: value rendering of a JSON document (arrays and objects inline).
inline std::string to_text_report(const json& doc) {
  std::string out;
  for (const auto& [key, value] : doc.items()) {
    out += key;
    out += ": ";
    out += value.is_string() ? value.get<std::string>() : value.dump();
    out += '\n';
  }
  return out;
}

}  // namespace qwstat
