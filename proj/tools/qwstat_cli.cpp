// Command-line front end: analyze marked components, construct and verify
// stationary states, simulate the walk, and evaluate the probability bound.

#include <cctype>
#include <complex>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qwstat/qwstat.hpp"

namespace {

using namespace qwstat;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case errc::parse_error:
    case errc::io_error:
    case errc::self_loop:
    case errc::duplicate_edge:
      return 2;
    case errc::bad_vertex:
    case errc::empty_marked:
    case errc::all_marked:
    case errc::marked_disconnected:
      return 3;
    case errc::not_applicable:
      return 5;
    default:
      return 6;
  }
}

bool looks_like_list(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != ',') return false;
  return true;
}

std::vector<int> load_marked(const Graph& g, const std::string& spec) {
  const auto labels = looks_like_list(spec) ? parse_marked_list(spec) : read_marked_file(spec);
  return to_vertex_ids(g, labels);
}

AmplitudeObjective parse_objective(const std::string& spec) {
  if (spec == "max-overlap") return AmplitudeObjective::max_overlap();
  if (spec == "uniform") return AmplitudeObjective::uniform();
  const std::string prefix = "custom:";
  if (spec.rfind(prefix, 0) == 0) {
    std::vector<double> values;
    std::istringstream in(spec.substr(prefix.size()));
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t pos = 0;
        values.push_back(std::stod(item, &pos));
        if (pos != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        fail(errc::parse_error, "bad custom amplitude '" + item + "'");
      }
    }
    if (values.empty()) fail(errc::parse_error, "custom objective needs at least one value");
    return AmplitudeObjective::custom_values(Eigen::Map<Eigen::VectorXd>(values.data(), values.size()));
  }
  fail(errc::parse_error, "unknown objective '" + spec + "' (max-overlap|uniform|custom:v1,v2,...)");
}

void emit(const json& doc, const std::string& format) {
  if (format == "machine")
    std::cout << doc.dump(2) << '\n';
  else
    std::cout << to_text_report(doc);
}

struct AnalysisBundle {
  Graph graph;
  MarkedAnalysis ma;
  UnmarkedDecomposition ud;
};

AnalysisBundle analyze_inputs(const std::string& graph_path, const std::string& marked_spec) {
  AnalysisBundle b;
  b.graph = read_graph_file(graph_path);
  b.ma = analyze_marked(b.graph, load_marked(b.graph, marked_spec));
  b.ud = decompose_unmarked(b.graph, b.ma);
  return b;
}

FamilySpec parse_family(const std::string& name, int n, int span, int k) {
  if (name == "counterexample") return {Family::Counterexample, 0, 0};
  if (name == "zero-overlap") return {Family::ZeroOverlap, 0, 0};
  if (name == "cycle") return {Family::Cycle, n, span};
  if (name == "complete") return {Family::Complete, n, k};
  if (name == "star") return {Family::Star, n, 0};
  fail(errc::parse_error, "unknown family '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary-state analysis for coined quantum walks with marked components"};
  app.require_subcommand(1);

  std::string graph_path, marked_spec, out_path, format = "text";
  std::string objective_spec = "max-overlap";
  std::optional<long> steps;
  double tol_stationary = tol::residual;

  auto add_instance_options = [&](CLI::App* cmd) {
    cmd->add_option("--graph", graph_path, "edge-list file")->required();
    cmd->add_option("--marked", marked_spec, "marked-set file, or comma-separated vertex labels")->required();
    cmd->add_option("--format", format, "report format: text|machine")
        ->check(CLI::IsMember({"text", "machine"}));
  };

  CLI::App* analyze = app.add_subcommand("analyze", "marked-component analysis and existence verdict");
  add_instance_options(analyze);

  CLI::App* construct = app.add_subcommand("construct", "construct and verify a stationary state");
  add_instance_options(construct);
  construct->add_option("--objective", objective_spec, "max-overlap|uniform|custom:v1,v2,...");
  construct->add_option("--out", out_path, "write the state as an arc-amplitude CSV");
  construct->add_option("--tol-stationary", tol_stationary, "residual tolerance")->check(CLI::PositiveNumber);

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "evolve the uniform state and record p_M(t)");
  add_instance_options(simulate_cmd);
  simulate_cmd->add_option("--steps", steps, "number of walk steps")->required()->check(CLI::NonNegativeNumber);
  simulate_cmd->add_option("--out", out_path, "write the p_M(t) series as CSV");

  CLI::App* bound = app.add_subcommand("bound", "probability bound, optionally compared to simulation");
  add_instance_options(bound);
  bound->add_option("--steps", steps, "also simulate this many steps and compare")->check(CLI::NonNegativeNumber);

  CLI::App* generate_cmd = app.add_subcommand("generate", "emit a built-in family as edge-list + marked files");
  std::string family_name;
  int gen_n = 0, gen_span = 1, gen_k = 1;
  generate_cmd->add_option("--family", family_name, "counterexample|zero-overlap|cycle|complete|star")->required();
  generate_cmd->add_option("--n", gen_n, "vertex count (cycle, complete, star)");
  generate_cmd->add_option("--span", gen_span, "marked span (cycle)");
  generate_cmd->add_option("--k", gen_k, "marked size (complete)");
  generate_cmd->add_option("--out", out_path, "output prefix; writes PREFIX.edges and PREFIX.marked")->required();
  generate_cmd->add_option("--format", format, "report format: text|machine")
      ->check(CLI::IsMember({"text", "machine"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) {
      const AnalysisBundle b = analyze_inputs(graph_path, marked_spec);
      emit(analysis_to_json(b.graph, b.ma, b.ud, decide_existence(b.graph, b.ma, b.ud)), format);
    } else if (construct->parsed()) {
      const AnalysisBundle b = analyze_inputs(graph_path, marked_spec);
      const StationaryReport report = construct_stationary(b.graph, b.ma, b.ud, parse_objective(objective_spec));
      if (!report.exists) {
        emit(stationary_to_json(b.graph, report), format);
        std::cerr << "no stationary state: " << to_string(report.reason) << '\n';
        return 4;
      }
      if (report.residual_norm > tol_stationary)
        fail(errc::consistency, "constructed state misses tolerance: residual " + fmt_double(report.residual_norm));
      if (!out_path.empty()) {
        std::ostringstream csv;
        write_state_csv(csv, b.graph, *report.state);
        write_file(out_path, csv.str());
      }
      emit(stationary_to_json(b.graph, report), format);
    } else if (simulate_cmd->parsed()) {
      const AnalysisBundle b = analyze_inputs(graph_path, marked_spec);
      WalkOperator op(b.graph, b.ma.marked);
      const EvolutionTrace trace = simulate(op, uniform_state<std::complex<double>>(b.graph), *steps);
      if (!out_path.empty()) {
        std::ostringstream csv;
        write_trace_csv(csv, trace);
        write_file(out_path, csv.str());
      }
      emit(trace_to_json(trace), format);
    } else if (bound->parsed()) {
      const AnalysisBundle b = analyze_inputs(graph_path, marked_spec);
      const BoundReport report = steps ? compare_bound_to_simulation(b.graph, b.ma, b.ud, *steps)
                                       : theorem_bound_report(b.graph, b.ma, b.ud);
      emit(bound_to_json(report), format);
      if (report.violation) {
        std::cerr << "VIOLATION: simulated max p exceeds the bound\n";
        return 6;
      }
    } else if (generate_cmd->parsed()) {
      const FamilyInstance inst = generate(parse_family(family_name, gen_n, gen_span, gen_k));
      std::ostringstream edges, marked;
      write_edge_list(edges, inst.graph);
      write_marked_set(marked, inst.graph, inst.marked);
      write_file(out_path + ".edges", edges.str());
      write_file(out_path + ".marked", marked.str());
      json doc;
      doc["family"] = family_name;
      doc["n"] = inst.graph.n;
      doc["m"] = inst.graph.edge_count();
      doc["graph_file"] = out_path + ".edges";
      doc["marked_file"] = out_path + ".marked";
      emit(doc, format);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 6;
  }
  return 0;
}
