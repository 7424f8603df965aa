#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "qwstat/common.hpp"
#include "qwstat/graph.hpp"
#include "qwstat/stationary.hpp"
#include "qwstat/walk.hpp"

namespace qwstat {

/// Normalization data and probability bound for a marked component.
/// denom = 2m - 2|E_M| - D^Mbar is the number of arcs leaving unmarked
/// vertices; a_bar = 1/sqrt(denom) caps the common unmarked-arc amplitude of
/// any normalized stationary state with equal unmarked amplitudes.
/// a_bar_uncorrected records the naive 1/sqrt(2m) value for comparison.
struct BoundReport {
  double a_bar = 0;
  double a_bar_uncorrected = 0;
  std::int64_t denom = 0;
  double c_sq_sum = 0;
  double bound = 0;
  double bound_clamped = 0;
  std::optional<double> sim_max_p;
  bool violation = false;
};

/// a_bar = 1/sqrt(2m - 2|E_M| - D^Mbar). The denominator is cross-checked
/// against the direct degree sum over unmarked vertices.
inline double compute_a_bar(const Graph& g, const MarkedAnalysis& ma) {
  const std::int64_t denom = 2 * g.edge_count() - 2 * ma.e_m - ma.d_boundary;
  std::int64_t unmarked_degsum = 0;
  for (int v = 0; v < g.n; ++v)
    if (!ma.in_marked[v]) unmarked_degsum += g.degree(v);
  if (denom != unmarked_degsum)
    fail(errc::consistency, "denominator mismatch: " + std::to_string(denom) + " vs degree sum " +
                                std::to_string(unmarked_degsum));
  if (denom <= 0) fail(errc::bad_argument, "no arcs leave the unmarked part");
  return 1.0 / std::sqrt(static_cast<double>(denom));
}

/// Checks |a| <= a_bar for a normalized state whose unmarked components all
/// carry one amplitude magnitude. States with differing magnitudes are
/// outside the ansatz the bound is derived for: returns nullopt.
inline std::optional<bool> verify_a_bound(const StationaryState& state, double a_bar) {
  if (!state.normalized) fail(errc::bad_argument, "a-bound applies to normalized states");
  const Eigen::VectorXd mags = state.component_amps.a.cwiseAbs();
  const double common = mags.maxCoeff();
  if ((mags.array() - common).abs().maxCoeff() > tol::algebraic * std::max(1.0, common)) return std::nullopt;
  return common <= a_bar + tol::algebraic;
}

/// True when the equal-unmarked-amplitude ansatz both exists and balances:
/// the all-ones amplitude vector satisfies the shortage constraint exactly
/// when M is non-bipartite or the partite degree sums agree.
inline bool theorem_bound_applicable(const MarkedAnalysis& ma, const UnmarkedDecomposition& ud) {
  const Graph unused;
  if (!decide_existence(unused, ma, ud).exists) return false;
  return !ma.bipartite || ma.degsum1 == ma.degsum2;
}

/// Probability bound 4/denom * (sum c_e^2 + 2 D^Mbar + 2|E_M|) for marked
/// components admitting an equal-unmarked-amplitude stationary state. The c
/// amplitudes must be in units where every unmarked-incident arc carries
/// exactly 1.
inline BoundReport theorem_bound(const MarkedAnalysis& ma, std::int64_t m,
                                 const std::map<std::pair<int, int>, double>& c) {
  BoundReport r;
  r.denom = 2 * m - 2 * ma.e_m - ma.d_boundary;
  if (r.denom <= 0) fail(errc::bad_argument, "no arcs leave the unmarked part");
  r.a_bar = 1.0 / std::sqrt(static_cast<double>(r.denom));
  r.a_bar_uncorrected = 1.0 / std::sqrt(2.0 * static_cast<double>(m));
  for (const auto& [edge, ce] : c) r.c_sq_sum += ce * ce;
  r.bound = 4.0 / static_cast<double>(r.denom) *
            (r.c_sq_sum + 2.0 * static_cast<double>(ma.d_boundary) + 2.0 * static_cast<double>(ma.e_m));
  r.bound_clamped = std::min(1.0, r.bound);
  return r;
}

/// Computes the bound with c obtained by neutralizing the unit-amplitude
/// shortages (all a_i = 1), the normalization the bound formula assumes.
inline BoundReport theorem_bound_report(const Graph& g, const MarkedAnalysis& ma, const UnmarkedDecomposition& ud) {
  if (!theorem_bound_applicable(ma, ud))
    fail(errc::not_applicable, "no stationary state with equal unmarked amplitudes exists");
  const ShortageSums shortages = compute_shortages(g, ma, ud, Eigen::VectorXd::Ones(ud.r()));
  const auto c = neutralize_shortages(ma, shortages);
  return theorem_bound(ma, g.edge_count(), c);
}

/// Runs the walk from the uniform state for `steps` steps and compares the
/// observed maximum of p_M(t) against the bound. A maximum above
/// bound + tol::violation sets the violation flag.
inline BoundReport compare_bound_to_simulation(const Graph& g, const MarkedAnalysis& ma,
                                               const UnmarkedDecomposition& ud, Eigen::Index steps) {
  BoundReport report = theorem_bound_report(g, ma, ud);
  WalkOperator op(g, ma.marked);
  const EvolutionTrace trace = simulate(op, uniform_state<std::complex<double>>(g), steps);
  report.sim_max_p = trace.max_p;
  report.violation = trace.max_p > report.bound + tol::violation;
  return report;
}

}  // namespace qwstat
