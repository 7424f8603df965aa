#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include <Eigen/Core>

#include "qwstat/common.hpp"
#include "qwstat/graph.hpp"

namespace qwstat {

/// State vector over directed arcs, one amplitude per arc (v,c), c in N(v).
template <class Scalar>
using ArcVector = Eigen::Vector<Scalar, Eigen::Dynamic>;

using ArcVectorXd = ArcVector<double>;
using ArcVectorXcd = ArcVector<std::complex<double>>;

/// Canonical bijection (v,c) -> flat index. Arc k has tail[k]=v, head[k]=c;
/// the outgoing arcs of v occupy [offset[v], offset[v+1]) in the order of the
/// sorted adjacency list. twin[k] is the index of the reversed arc.
struct ArcSpace {
  Eigen::Index total = 0;  // 2m
  std::vector<Eigen::Index> offset;
  std::vector<int> tail, head;
  std::vector<Eigen::Index> twin;

  static ArcSpace build(const Graph& g) {
    ArcSpace a;
    a.total = g.arc_count();
    a.offset.assign(g.n + 1, 0);
    a.tail.reserve(a.total);
    a.head.reserve(a.total);
    for (int v = 0; v < g.n; ++v) {
      a.offset[v + 1] = a.offset[v] + g.degree(v);
      for (int c : g.adj[v]) {
        a.tail.push_back(v);
        a.head.push_back(c);
      }
    }
    a.twin.resize(a.total);
    for (Eigen::Index k = 0; k < a.total; ++k) a.twin[k] = a.index_in(g, a.head[k], a.tail[k]);
    return a;
  }

  Eigen::Index index_in(const Graph& g, int v, int c) const {
    const auto& nbrs = g.adj[v];
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), c);
    if (it == nbrs.end() || *it != c)
      fail(errc::bad_vertex, "no arc " + std::to_string(v) + "->" + std::to_string(c));
    return offset[v] + (it - nbrs.begin());
  }

  Eigen::Index degree(int v) const { return offset[v + 1] - offset[v]; }
};

}  // namespace qwstat
