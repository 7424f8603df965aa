#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qwstat/arcs.hpp"
#include "qwstat/common.hpp"
#include "qwstat/graph.hpp"
#include "qwstat/walk.hpp"

namespace qwstat {

/// One real amplitude per unmarked component H_i.
struct UnmarkedAmplitudes {
  Eigen::VectorXd a;
  // Set when the requested objective degenerated (its target was parallel to
  // the balance-constraint normal) and an arbitrary unit solution was
  // returned instead; such solutions have zero overlap with the initial state.
  bool zero_overlap_fallback = false;
};

enum class Objective { MaxOverlap, Uniform, Custom };

struct AmplitudeObjective {
  Objective kind = Objective::MaxOverlap;
  Eigen::VectorXd custom;

  static AmplitudeObjective max_overlap() { return {Objective::MaxOverlap, {}}; }
  static AmplitudeObjective uniform() { return {Objective::Uniform, {}}; }
  static AmplitudeObjective custom_values(Eigen::VectorXd v) { return {Objective::Custom, std::move(v)}; }
};

namespace detail {

/// Normal of the shortage-balance hyperplane: g_i = k_i1 - k_i2. Zero when M
/// is non-bipartite (no constraint) or when the boundary counts cancel.
inline Eigen::VectorXd balance_normal(const UnmarkedDecomposition& ud, const MarkedAnalysis& ma) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(ud.r());
  if (!ma.bipartite) return g;
  for (int i = 0; i < ud.r(); ++i)
    g[i] = static_cast<double>(ud.boundary(i, 0) - ud.boundary(i, 1));
  return g;
}

/// Arc multiplicity of component i as seen by the initial state:
/// w_i = 2|E_i| + k_i1 + k_i2 = sum of deg_G(v) over v in H_i.
inline Eigen::VectorXd component_arc_weights(const UnmarkedDecomposition& ud) {
  Eigen::VectorXd w(ud.r());
  for (int i = 0; i < ud.r(); ++i)
    w[i] = static_cast<double>(2 * ud.internal_edges[i] + ud.boundary(i, 0) + ud.boundary(i, 1));
  return w;
}

}  // namespace detail

/// Picks per-component amplitudes on the balance hyperplane {a : g.a = 0}
/// (vacuous for non-bipartite M). MaxOverlap returns the unit vector of the
/// hyperplane maximizing the overlap functional w.a; Uniform projects the
/// all-ones vector; Custom validates a user vector. When the target vector is
/// parallel to g the objective has no nonzero optimum in direction w; the
/// first coordinate axis with a nonzero projection is used instead and the
/// fallback flag is set.
inline UnmarkedAmplitudes solve_component_amplitudes(const UnmarkedDecomposition& ud, const MarkedAnalysis& ma,
                                                     const AmplitudeObjective& objective = {}) {
  const int r = ud.r();
  const Eigen::VectorXd g = detail::balance_normal(ud, ma);
  const double gg = g.squaredNorm();
  auto project = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    if (gg == 0.0) return v;
    return v - (g.dot(v) / gg) * g;
  };

  UnmarkedAmplitudes out;
  if (objective.kind == Objective::Custom) {
    if (objective.custom.size() != r)
      fail(errc::bad_argument, "custom amplitude vector has length " + std::to_string(objective.custom.size()) +
                                   ", expected " + std::to_string(r));
    if (objective.custom.norm() == 0.0) fail(errc::bad_argument, "custom amplitude vector is zero");
    const double viol = std::abs(g.dot(objective.custom));
    if (viol > tol::algebraic * std::max(1.0, g.norm() * objective.custom.norm()))
      fail(errc::bad_argument, "custom amplitudes violate the shortage balance constraint by " + std::to_string(viol));
    out.a = objective.custom;
    return out;
  }

  const Eigen::VectorXd target =
      objective.kind == Objective::MaxOverlap ? detail::component_arc_weights(ud) : Eigen::VectorXd::Ones(r);
  Eigen::VectorXd a = project(target);
  if (a.norm() > 1e-9) {
    out.a = objective.kind == Objective::MaxOverlap ? Eigen::VectorXd(a / a.norm()) : a;
    return out;
  }

  // Degenerate objective: every admissible solution is orthogonal to the
  // target, so any unit vector of the hyperplane serves.
  if (gg == 0.0) fail(errc::bad_argument, "no unmarked components to carry amplitude");
  for (int j = 0; j < r; ++j) {
    Eigen::VectorXd e = project(Eigen::VectorXd::Unit(r, j));
    if (e.norm() > 1e-9) {
      out.a = e / e.norm();
      out.zero_overlap_fallback = true;
      return out;
    }
  }
  fail(errc::infeasible, "balance constraint admits no nonzero solution");
}

/// Shortage of each marked vertex under per-component amplitudes `a`, plus
/// the partite-set sums s(M1) and s(M2).
struct ShortageSums {
  double s1 = 0, s2 = 0;
  std::map<int, double> per_vertex;
};

inline ShortageSums compute_shortages(const Graph& g, const MarkedAnalysis& ma, const UnmarkedDecomposition& ud,
                                      const Eigen::Ref<const Eigen::VectorXd>& a) {
  if (a.size() != ud.r()) fail(errc::bad_argument, "amplitude vector length mismatch");
  ShortageSums s;
  for (int v : ma.marked) {
    double shortage = 0;
    for (int w : g.adj[v])
      if (!ma.in_marked[w]) shortage += a[ud.comp_of[w]];
    s.per_vertex[v] = shortage;
    if (ma.bipartite) {
      if (ma.side[v] == 0)
        s.s1 += shortage;
      else
        s.s2 += shortage;
    } else {
      s.s1 += shortage;
    }
  }
  return s;
}

/// Solves for amplitudes on the edges inside M so that every marked vertex's
/// outgoing amplitudes sum to zero: for each v in M,
///   sum_{e in E_M, e incident to v} c_e = -shortage(v).
/// The system is the unsigned vertex-edge incidence of the M-induced
/// subgraph; the minimum-norm least-squares solution makes the output
/// canonical. A residual above tolerance means the shortage sums were not
/// balanced, which the solvability criterion rules out for valid inputs.
inline std::map<std::pair<int, int>, double> neutralize_shortages(const MarkedAnalysis& ma,
                                                                  const ShortageSums& shortages) {
  if (ma.bipartite) {
    const double scale = std::max({1.0, std::abs(shortages.s1), std::abs(shortages.s2)});
    if (std::abs(shortages.s1 - shortages.s2) > tol::algebraic * scale)
      fail(errc::infeasible, "partite shortage sums differ: s1=" + std::to_string(shortages.s1) +
                                 " s2=" + std::to_string(shortages.s2));
  }

  const int nm = static_cast<int>(ma.marked.size());
  const int ne = static_cast<int>(ma.marked_edges.size());
  std::map<int, int> row;
  for (int i = 0; i < nm; ++i) row[ma.marked[i]] = i;

  Eigen::MatrixXd incidence = Eigen::MatrixXd::Zero(nm, ne);
  for (int j = 0; j < ne; ++j) {
    incidence(row[ma.marked_edges[j].first], j) = 1.0;
    incidence(row[ma.marked_edges[j].second], j) = 1.0;
  }
  Eigen::VectorXd rhs(nm);
  for (int i = 0; i < nm; ++i) rhs[i] = -shortages.per_vertex.at(ma.marked[i]);

  Eigen::VectorXd x = ne > 0 ? Eigen::VectorXd(incidence.completeOrthogonalDecomposition().solve(rhs))
                             : Eigen::VectorXd(0);
  const double scale = std::max(1.0, rhs.lpNorm<Eigen::Infinity>());
  const double residual = (incidence * x - rhs).lpNorm<Eigen::Infinity>();
  if (residual > tol::residual * scale)
    fail(errc::infeasible, "shortages cannot be neutralized, residual " + std::to_string(residual));

  std::map<std::pair<int, int>, double> c;
  for (int j = 0; j < ne; ++j) c[ma.marked_edges[j]] = x[j];
  return c;
}

/// Assembled candidate state: arc amplitudes in ArcSpace order plus the
/// parameters it was built from, rescaled together if normalized.
struct StationaryState {
  ArcVectorXd arc_amplitudes;
  UnmarkedAmplitudes component_amps;
  std::map<std::pair<int, int>, double> marked_edge_amps;
  bool normalized = false;
  double overlap_with_initial = 0;
};

/// Inner product with the uniform initial state, computed two ways and
/// cross-checked: the raw sum over all arcs, and the per-component identity
/// sum_i a_i (2|E_i| + k_i1 + k_i2) which holds once every marked vertex's
/// outgoing amplitudes cancel. Returns the raw arc sum route.
inline double overlap(const Graph& g, const MarkedAnalysis& ma, const StationaryState& state) {
  const ArcSpace arcs = ArcSpace::build(g);
  if (state.arc_amplitudes.size() != arcs.total) fail(errc::dimension_mismatch, "state size mismatch");
  const double inv = 1.0 / std::sqrt(2.0 * static_cast<double>(g.edge_count()));
  const double direct = inv * state.arc_amplitudes.sum();
  double unmarked_tails = 0;
  for (Eigen::Index k = 0; k < arcs.total; ++k)
    if (!ma.in_marked[arcs.tail[k]]) unmarked_tails += state.arc_amplitudes[k];
  const double componentwise = inv * unmarked_tails;
  if (std::abs(direct - componentwise) > tol::algebraic * std::max({1.0, std::abs(direct), std::abs(componentwise)}))
    fail(errc::consistency, "overlap routes disagree: " + std::to_string(direct) + " vs " +
                                std::to_string(componentwise) + " (marked sums nonzero?)");
  return direct;
}

/// Lays the component amplitudes and marked-edge amplitudes onto arcs: both
/// arcs of an edge with an unmarked endpoint in H_i carry a_i, both arcs of
/// an edge inside M carry c_e. With `normalize` the state is scaled to unit
/// norm via ||psi||^2 = sum_i 2 a_i^2 (|E_i| + k_i1 + k_i2) + 2 sum_e c_e^2.
inline StationaryState assemble_state(const Graph& g, const MarkedAnalysis& ma, const UnmarkedDecomposition& ud,
                                      const UnmarkedAmplitudes& amps,
                                      const std::map<std::pair<int, int>, double>& c, bool normalize) {
  if (amps.a.size() != ud.r()) fail(errc::bad_argument, "amplitude vector length mismatch");
  const ArcSpace arcs = ArcSpace::build(g);

  StationaryState state;
  state.component_amps = amps;
  state.marked_edge_amps = c;
  state.arc_amplitudes.resize(arcs.total);
  for (Eigen::Index k = 0; k < arcs.total; ++k) {
    const int u = arcs.tail[k], v = arcs.head[k];
    if (!ma.in_marked[u]) {
      state.arc_amplitudes[k] = amps.a[ud.comp_of[u]];
    } else if (!ma.in_marked[v]) {
      state.arc_amplitudes[k] = amps.a[ud.comp_of[v]];
    } else {
      auto it = c.find(std::minmax(u, v));
      state.arc_amplitudes[k] = it == c.end() ? 0.0 : it->second;
    }
  }

  double norm_sq = 0;
  for (int i = 0; i < ud.r(); ++i)
    norm_sq += 2.0 * amps.a[i] * amps.a[i] *
               static_cast<double>(ud.internal_edges[i] + ud.boundary(i, 0) + ud.boundary(i, 1));
  for (const auto& [edge, ce] : c) norm_sq += 2.0 * ce * ce;
  if (norm_sq == 0.0) fail(errc::zero_state, "assembled state is identically zero");

  if (normalize) {
    const double s = 1.0 / std::sqrt(norm_sq);
    state.arc_amplitudes *= s;
    state.component_amps.a *= s;
    for (auto& [edge, ce] : state.marked_edge_amps) ce *= s;
    state.normalized = true;
  }
  state.overlap_with_initial = overlap(g, ma, state);
  return state;
}

enum class ExistenceReason { NonBipartiteM, DegreeSumsEqual, DisconnectedUnmarked, NoSolutionConnectedCase };

inline const char* to_string(ExistenceReason r) {
  switch (r) {
    case ExistenceReason::NonBipartiteM: return "NON_BIPARTITE_M";
    case ExistenceReason::DegreeSumsEqual: return "DEGREE_SUMS_EQUAL";
    case ExistenceReason::DisconnectedUnmarked: return "DISCONNECTED_UNMARKED";
    case ExistenceReason::NoSolutionConnectedCase: return "NO_SOLUTION_CONNECTED_CASE";
  }
  return "?";
}

struct ExistenceVerdict {
  bool exists = false;
  ExistenceReason reason = ExistenceReason::NoSolutionConnectedCase;
};

/// Existence criterion for a stationary state carried by the unmarked part:
/// non-bipartite M always admits one; so does any M whose removal disconnects
/// the rest, because the per-component amplitudes give enough freedom to
/// balance the shortage sums. Only the connected case with a bipartite M
/// hinges on the partite degree sums being equal.
inline ExistenceVerdict decide_existence(const Graph&, const MarkedAnalysis& ma, const UnmarkedDecomposition& ud) {
  if (!ma.bipartite) return {true, ExistenceReason::NonBipartiteM};
  if (ud.r() >= 2) return {true, ExistenceReason::DisconnectedUnmarked};
  if (ma.degsum1 == ma.degsum2) return {true, ExistenceReason::DegreeSumsEqual};
  return {false, ExistenceReason::NoSolutionConnectedCase};
}

struct StationaryReport {
  bool exists = false;
  ExistenceReason reason = ExistenceReason::NoSolutionConnectedCase;
  std::optional<StationaryState> state;
  double residual_norm = 0;
};

/// Full pipeline: existence, component amplitudes, shortage neutralization,
/// assembly, and the fixed-point residual of the result under the walk.
inline StationaryReport construct_stationary(const Graph& g, const MarkedAnalysis& ma,
                                             const UnmarkedDecomposition& ud,
                                             const AmplitudeObjective& objective = {}, bool normalize = true) {
  StationaryReport report;
  const ExistenceVerdict verdict = decide_existence(g, ma, ud);
  report.exists = verdict.exists;
  report.reason = verdict.reason;
  if (!verdict.exists) return report;

  const UnmarkedAmplitudes amps = solve_component_amplitudes(ud, ma, objective);
  const ShortageSums shortages = compute_shortages(g, ma, ud, amps.a);
  const auto c = neutralize_shortages(ma, shortages);
  report.state = assemble_state(g, ma, ud, amps, c, normalize);

  WalkOperator op(g, ma.marked);
  report.residual_norm = check_stationary(op, report.state->arc_amplitudes);
  return report;
}

}  // namespace qwstat
