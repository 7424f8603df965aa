#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qwstat/common.hpp"
#include "qwstat/graph.hpp"

namespace qwstat {

struct FamilyInstance {
  Graph graph;
  std::vector<int> marked;
};

namespace detail {
inline FamilyInstance make_instance(const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
                                    std::vector<int> marked) {
  return {load_graph(edges), std::move(marked)};
}
}  // namespace detail

/// Five-vertex witness where the connected-case degree criterion denies a
/// stationary state (partite degree sums 2 vs 3) yet one exists because the
/// unmarked part splits into two components. Vertices: 0,1 marked; 2 alone on
/// one side; 3,4 joined on the other. Expected construction: a = (2,1),
/// c(0-1) = -2 up to scale.
inline FamilyInstance gen_counterexample() {
  return detail::make_instance({{0, 1}, {2, 0}, {3, 1}, {4, 1}, {3, 4}}, {0, 1});
}

/// Six-vertex witness whose balanced amplitude choice a1 = -a2 produces a
/// stationary state with zero overlap with the initial state: both unmarked
/// components look identical from the marked edge (k11=k21=1, k12=k22=1,
/// |E_1|=|E_2|=1).
inline FamilyInstance gen_zero_overlap() {
  return detail::make_instance({{0, 1}, {2, 3}, {4, 5}, {2, 0}, {4, 0}, {3, 1}, {5, 1}}, {0, 1});
}

/// Cycle C_n with `span` consecutive marked vertices.
inline FamilyInstance gen_cycle(int n, int span) {
  if (n < 3) fail(errc::bad_argument, "cycle needs n >= 3");
  if (span < 1 || span >= n) fail(errc::bad_argument, "marked span must be in [1, n-1]");
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  std::vector<int> marked(span);
  std::iota(marked.begin(), marked.end(), 0);
  return detail::make_instance(edges, std::move(marked));
}

/// Complete graph K_n with the first k vertices marked.
inline FamilyInstance gen_complete(int n, int k) {
  if (n < 3) fail(errc::bad_argument, "complete graph needs n >= 3");
  if (k < 1 || k >= n) fail(errc::bad_argument, "marked size must be in [1, n-1]");
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  std::vector<int> marked(k);
  std::iota(marked.begin(), marked.end(), 0);
  return detail::make_instance(edges, std::move(marked));
}

/// Star K_{1,n-1} with the center marked; removing it isolates every leaf.
inline FamilyInstance gen_star(int n) {
  if (n < 3) fail(errc::bad_argument, "star needs n >= 3");
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
  return detail::make_instance(edges, {0});
}

enum class Family { Counterexample, ZeroOverlap, Cycle, Complete, Star };

struct FamilySpec {
  Family family = Family::Counterexample;
  int n = 0;
  int k = 0;  // marked span for cycles, marked size for complete graphs
};

inline FamilyInstance generate(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::Counterexample: return gen_counterexample();
    case Family::ZeroOverlap: return gen_zero_overlap();
    case Family::Cycle: return gen_cycle(spec.n, spec.k);
    case Family::Complete: return gen_complete(spec.n, spec.k);
    case Family::Star: return gen_star(spec.n);
  }
  fail(errc::bad_argument, "unknown family");
}

}  // namespace qwstat
