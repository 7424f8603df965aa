#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "qwstat/arcs.hpp"
#include "qwstat/common.hpp"
#include "qwstat/graph.hpp"

namespace qwstat {

/// Coined walk operator U' = S * C * Q applied matrix-free:
///   Q negates every arc leaving a marked vertex,
///   C applies the Grover diffusion 2*mean - x to the outgoing coin of each
///     vertex (identity on degree-1 vertices),
///   S is the flip-flop shift swapping (u,v) with (v,u).
/// Under this convention a state is fixed exactly when it is arc-symmetric,
/// constant on the arcs incident to each unmarked component, and has zero
/// outgoing sum at every marked vertex.
class WalkOperator {
 public:
  WalkOperator(Graph graph, std::vector<int> marked)
      : graph_(std::move(graph)), arcs_(ArcSpace::build(graph_)), marked_(std::move(marked)) {
    std::sort(marked_.begin(), marked_.end());
    marked_.erase(std::unique(marked_.begin(), marked_.end()), marked_.end());
    is_marked_.assign(graph_.n, 0);
    for (int v : marked_) {
      if (v < 0 || v >= graph_.n)
        fail(errc::bad_vertex, "marked vertex " + std::to_string(v) + " out of range");
      is_marked_[v] = 1;
    }
  }

  const Graph& graph() const { return graph_; }
  const ArcSpace& arcs() const { return arcs_; }
  const std::vector<int>& marked() const { return marked_; }
  bool is_marked(int v) const { return is_marked_[v] != 0; }

 private:
  Graph graph_;
  ArcSpace arcs_;
  std::vector<int> marked_;
  std::vector<char> is_marked_;
};

/// One step of the perturbed walk: returns S(C(Q(x))).
template <class Scalar>
ArcVector<Scalar> apply_step(const WalkOperator& op, const ArcVector<Scalar>& x) {
  const ArcSpace& arcs = op.arcs();
  if (x.size() != arcs.total)
    fail(errc::dimension_mismatch, "state has " + std::to_string(x.size()) + " amplitudes, expected " +
                                       std::to_string(arcs.total));
  ArcVector<Scalar> coined = x;
  for (int v = 0; v < op.graph().n; ++v) {
    auto seg = coined.segment(arcs.offset[v], arcs.degree(v));
    const Scalar two_mean = Scalar(2) * seg.mean();
    if (op.is_marked(v))
      seg.array() -= two_mean;  // C(Q x) = x - 2*mean(x) on marked coins
    else
      seg = (-seg).array() + two_mean;
  }
  ArcVector<Scalar> shifted(arcs.total);
  for (Eigen::Index k = 0; k < arcs.total; ++k) shifted[k] = coined[arcs.twin[k]];
  return shifted;
}

/// Initial state of the search walk: every arc at 1/sqrt(2m).
template <class Scalar = double>
ArcVector<Scalar> uniform_state(const Graph& g) {
  if (g.edge_count() == 0) fail(errc::bad_argument, "uniform state needs at least one edge");
  return ArcVector<Scalar>::Constant(g.arc_count(), Scalar(1.0 / std::sqrt(2.0 * static_cast<double>(g.edge_count()))));
}

/// Probability of measuring a marked vertex: sum of |amplitude|^2 over the
/// arcs leaving marked vertices.
template <class Scalar>
double marked_probability(const WalkOperator& op, const ArcVector<Scalar>& x) {
  if (x.size() != op.arcs().total) fail(errc::dimension_mismatch, "state size mismatch");
  double p = 0;
  for (int v : op.marked()) p += x.segment(op.arcs().offset[v], op.arcs().degree(v)).squaredNorm();
  return p;
}

struct EvolutionTrace {
  Eigen::VectorXd p_series;  // p_M(t) for t = 0..T
  double max_p = 0;
  Eigen::Index argmax_t = 0;
};

/// Evolves x0 for `steps` applications of U', recording p_M(t) after each.
/// x0 must be normalized; any step drifting off unit norm beyond tol::drift
/// aborts, since it would mean the operator lost unitarity.
template <class Scalar>
EvolutionTrace simulate(const WalkOperator& op, ArcVector<Scalar> x, Eigen::Index steps) {
  if (steps < 0) fail(errc::bad_argument, "negative step count");
  EvolutionTrace trace;
  trace.p_series.resize(steps + 1);
  for (Eigen::Index t = 0; t <= steps; ++t) {
    if (t > 0) x = apply_step(op, x);
    const double drift = std::abs(x.norm() - 1.0);
    if (drift > tol::drift)
      fail(errc::norm_drift, "norm drift " + std::to_string(drift) + " at step " + std::to_string(t));
    const double p = marked_probability(op, x);
    trace.p_series[t] = p;
    if (t == 0 || p > trace.max_p) {
      trace.max_p = p;
      trace.argmax_t = t;
    }
  }
  return trace;
}

/// Relative fixed-point residual ||U'x - x|| / ||x||.
template <class Scalar>
double check_stationary(const WalkOperator& op, const ArcVector<Scalar>& x) {
  const double nrm = x.norm();
  if (nrm == 0) fail(errc::zero_state, "stationarity check on zero state");
  return (apply_step(op, x) - x).norm() / nrm;
}

}  // namespace qwstat
