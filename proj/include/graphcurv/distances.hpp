#pragma once

#include "graphcurv/graph.hpp"

namespace graphcurv {

/// BFS hop counts from src; -1 where unreachable. Weights only determine
/// adjacency (w > 0), never path length.
inline std::vector<int> bfs_hops(const WeightedGraph& g, int src) {
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<int> queue{src};
  dist[static_cast<std::size_t>(src)] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    for (const auto& nb : g.neighbors(x)) {
      if (dist[static_cast<std::size_t>(nb.v)] < 0) {
        dist[static_cast<std::size_t>(nb.v)] = dist[static_cast<std::size_t>(x)] + 1;
        queue.push_back(nb.v);
      }
    }
  }
  return dist;
}

/// All-pairs combinatorial (hop-count) distances of a connected graph.
class DistanceMatrix {
 public:
  DistanceMatrix(int n, std::vector<int> hops) : n_(n), hops_(std::move(hops)) {
    for (const int h : hops_) diameter_ = std::max(diameter_, h);
  }

  int size() const noexcept { return n_; }
  int at(int x, int y) const { return hops_[static_cast<std::size_t>(x) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(y)]; }
  int diameter() const noexcept { return diameter_; }

 private:
  int n_;
  std::vector<int> hops_;
  int diameter_ = 0;
};

inline DistanceMatrix combinatorial_distances(const WeightedGraph& g) {
  if (!g.connected()) {
    throw DisconnectedGraphError("combinatorial distances require a connected graph; found " +
                                     std::to_string(g.components().size()) + " components",
                                 g.components());
  }
  const int n = g.vertex_count();
  std::vector<int> hops(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    const auto row = bfs_hops(g, s);
    std::copy(row.begin(), row.end(), hops.begin() + static_cast<std::size_t>(s) * static_cast<std::size_t>(n));
  }
  return {n, std::move(hops)};
}

/// Vertices at hop distance exactly 1 and 2 from the center, each sorted.
struct TwoBall {
  std::vector<int> sphere1;
  std::vector<int> sphere2;
};

inline TwoBall two_ball(const WeightedGraph& g, int center) {
  TwoBall ball;
  for (const auto& nb : g.neighbors(center)) ball.sphere1.push_back(nb.v);
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
  seen[static_cast<std::size_t>(center)] = true;
  for (const int y : ball.sphere1) seen[static_cast<std::size_t>(y)] = true;
  for (const int y : ball.sphere1) {
    for (const auto& nb : g.neighbors(y)) {
      if (!seen[static_cast<std::size_t>(nb.v)]) {
        seen[static_cast<std::size_t>(nb.v)] = true;
        ball.sphere2.push_back(nb.v);
      }
    }
  }
  std::sort(ball.sphere2.begin(), ball.sphere2.end());
  return ball;
}

}  // namespace graphcurv
