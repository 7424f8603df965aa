#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "qwstat/common.hpp"

namespace qwstat {

/// Undirected simple graph. Vertices are 0..n-1; `labels` keeps the external
/// ids they were loaded under (identity for generated graphs). Adjacency
/// lists are sorted, edges are stored as (u,v) with u < v in lexicographic
/// order.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adj;
  std::vector<std::int64_t> labels;

  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges.size()); }
  std::int64_t arc_count() const { return 2 * edge_count(); }
  int degree(int v) const { return static_cast<int>(adj[v].size()); }

  bool has_edge(int u, int v) const {
    if (u < 0 || u >= n || v < 0 || v >= n) return false;
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
  }

  /// Compact vertex id for an external label, or -1.
  int vertex_of_label(std::int64_t label) const {
    for (int v = 0; v < n; ++v)
      if (labels[v] == label) return v;
    return -1;
  }
};

/// Builds a Graph from a list of labeled endpoint pairs. Labels are compacted
/// to 0..n-1 in order of first appearance. Self-loops and repeated edges are
/// rejected: downstream edge counts are set cardinalities.
inline Graph load_graph(const std::vector<std::pair<std::int64_t, std::int64_t>>& edge_list) {
  Graph g;
  std::vector<std::int64_t> seen;
  auto intern = [&](std::int64_t label) {
    if (label < 0) fail(errc::bad_vertex, "negative vertex label " + std::to_string(label));
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (seen[i] == label) return static_cast<int>(i);
    seen.push_back(label);
    return static_cast<int>(seen.size() - 1);
  };

  for (const auto& [la, lb] : edge_list) {
    if (la == lb)
      fail(errc::self_loop, "self-loop at vertex " + std::to_string(la));
    int u = intern(la);
    int v = intern(lb);
    auto e = std::minmax(u, v);
    g.edges.emplace_back(e.first, e.second);
  }
  g.n = static_cast<int>(seen.size());
  g.labels = std::move(seen);

  std::sort(g.edges.begin(), g.edges.end());
  auto dup = std::adjacent_find(g.edges.begin(), g.edges.end());
  if (dup != g.edges.end())
    fail(errc::duplicate_edge, "duplicate edge " + std::to_string(g.labels[dup->first]) + "-" +
                                   std::to_string(g.labels[dup->second]));

  g.adj.assign(g.n, {});
  for (const auto& [u, v] : g.edges) {
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

/// Marked component M and its counts: bipartition M1/M2, internal edge count
/// |E_M|, boundary edge count to the unmarked part, and the total degrees of
/// the partite sets.
struct MarkedAnalysis {
  std::vector<int> marked;  // sorted
  std::vector<char> in_marked;
  bool bipartite = false;
  std::vector<int> part1, part2;      // empty when non-bipartite
  std::vector<signed char> side;      // -1 unmarked, 0 part1, 1 part2 (bipartite only)
  std::int64_t e_m = 0;               // edges inside M
  std::int64_t d_boundary = 0;        // edges between M and its complement
  std::int64_t degsum1 = 0, degsum2 = 0;
  std::vector<std::pair<int, int>> marked_edges;  // E_M, sorted
};

/// 2-colors the subgraph induced by `marked` and tallies the edge counts the
/// existence criteria need. M must be nonempty, proper, and induce a
/// connected subgraph. The lowest-labeled marked vertex is assigned to M1 so
/// the bipartition is reproducible.
inline MarkedAnalysis analyze_marked(const Graph& g, std::vector<int> marked) {
  std::sort(marked.begin(), marked.end());
  marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
  if (marked.empty()) fail(errc::empty_marked, "marked set is empty");
  for (int v : marked)
    if (v < 0 || v >= g.n) fail(errc::bad_vertex, "marked vertex " + std::to_string(v) + " out of range");
  if (static_cast<int>(marked.size()) == g.n) fail(errc::all_marked, "marked set equals the whole vertex set");

  MarkedAnalysis ma;
  ma.marked = std::move(marked);
  ma.in_marked.assign(g.n, 0);
  for (int v : ma.marked) ma.in_marked[v] = 1;

  // BFS 2-coloring restricted to M, rooted at the lowest marked vertex.
  ma.side.assign(g.n, -1);
  ma.bipartite = true;
  int reached = 0;
  std::queue<int> q;
  ma.side[ma.marked.front()] = 0;
  q.push(ma.marked.front());
  ++reached;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : g.adj[v]) {
      if (!ma.in_marked[w]) continue;
      if (ma.side[w] < 0) {
        ma.side[w] = static_cast<signed char>(1 - ma.side[v]);
        q.push(w);
        ++reached;
      } else if (ma.side[w] == ma.side[v]) {
        ma.bipartite = false;
      }
    }
  }
  if (reached != static_cast<int>(ma.marked.size()))
    fail(errc::marked_disconnected, "marked set does not induce a connected subgraph");

  for (const auto& [u, v] : g.edges) {
    bool mu = ma.in_marked[u], mv = ma.in_marked[v];
    if (mu && mv) {
      ++ma.e_m;
      ma.marked_edges.emplace_back(u, v);
    } else if (mu || mv) {
      ++ma.d_boundary;
    }
  }

  if (ma.bipartite) {
    for (int v : ma.marked) {
      if (ma.side[v] == 0) {
        ma.part1.push_back(v);
        ma.degsum1 += g.degree(v);
      } else {
        ma.part2.push_back(v);
        ma.degsum2 += g.degree(v);
      }
    }
  } else {
    std::fill(ma.side.begin(), ma.side.end(), static_cast<signed char>(-1));
  }
  return ma;
}

/// Connected components H_1..H_r of the unmarked part, with internal edge
/// counts |E_i| and boundary edge counts K(i,0)=k_i1 (edges to M1) and
/// K(i,1)=k_i2 (edges to M2). For non-bipartite M all boundary edges of H_i
/// are counted in K(i,0).
struct UnmarkedDecomposition {
  std::vector<std::vector<int>> components;  // ordered by lowest contained vertex
  std::vector<int> comp_of;                  // -1 for marked vertices
  std::vector<std::int64_t> internal_edges;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 2> boundary;

  int r() const { return static_cast<int>(components.size()); }
};

inline UnmarkedDecomposition decompose_unmarked(const Graph& g, const MarkedAnalysis& ma) {
  UnmarkedDecomposition ud;
  ud.comp_of.assign(g.n, -1);
  for (int start = 0; start < g.n; ++start) {
    if (ma.in_marked[start] || ud.comp_of[start] >= 0) continue;
    int id = ud.r();
    std::vector<int> comp;
    std::queue<int> q;
    ud.comp_of[start] = id;
    q.push(start);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      comp.push_back(v);
      for (int w : g.adj[v]) {
        if (ma.in_marked[w] || ud.comp_of[w] >= 0) continue;
        ud.comp_of[w] = id;
        q.push(w);
      }
    }
    std::sort(comp.begin(), comp.end());
    ud.components.push_back(std::move(comp));
  }

  ud.internal_edges.assign(ud.r(), 0);
  ud.boundary.setZero(ud.r(), 2);
  for (const auto& [u, v] : g.edges) {
    bool mu = ma.in_marked[u], mv = ma.in_marked[v];
    if (mu && mv) continue;
    if (!mu && !mv) {
      ++ud.internal_edges[ud.comp_of[u]];  // comp_of[u] == comp_of[v]
    } else {
      int m = mu ? u : v;
      int h = mu ? v : u;
      int col = (ma.bipartite && ma.side[m] == 1) ? 1 : 0;
      ++ud.boundary(ud.comp_of[h], col);
    }
  }
  return ud;
}

}  // namespace qwstat
