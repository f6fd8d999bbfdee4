#pragma once

// Test-side helpers: independent oracles and the shared graph corpus. These
// deliberately avoid the library's computation paths they are used to check.

#include <Eigen/Dense>

#include "graphcurv/graphcurv.hpp"

namespace testutil {

using graphcurv::MeasureRule;
using graphcurv::ScalarField;
using graphcurv::WeightedGraph;

inline WeightedGraph single_edge(double w = 1.0) {
  return WeightedGraph({"a", "b"}, {{0, 1, w}}, MeasureRule::Unit);
}

inline WeightedGraph path3() {
  return WeightedGraph({"a", "b", "c"}, {{0, 1, 1.0}, {1, 2, 1.0}}, MeasureRule::Unit);
}

inline ScalarField random_field(int count, std::uint64_t seed) {
  return graphcurv::rng::normal_field(count, seed);
}

/// (lambda w, lambda m): leaves Delta, Gamma and hence rho unchanged.
inline WeightedGraph scaled(const WeightedGraph& g, double lambdaW, double lambdaM) {
  auto edges = g.edges();
  for (auto& e : edges) e.w *= lambdaW;
  std::vector<double> measure = g.measures();
  for (auto& m : measure) m *= lambdaM;
  return {g.names(), edges, measure};
}

/// Dense-matrix Laplacian L = M^{-1}(W - D) applied to f.
inline ScalarField laplacian_via_matrix(const WeightedGraph& g, const ScalarField& f) {
  const int n = g.vertex_count();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x != y) l(x, y) = g.weight(x, y) / g.measure(x);
    }
    l(x, x) = -g.degree(x) / g.measure(x);
  }
  Eigen::VectorXd v(n);
  for (int x = 0; x < n; ++x) v(x) = f[static_cast<std::size_t>(x)];
  const Eigen::VectorXd out = l * v;
  ScalarField r(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) r[static_cast<std::size_t>(x)] = out(x);
  return r;
}

/// Gamma via the defining identity 2 Gamma(f,h) = Delta(fh) - f Delta h - h Delta f.
inline ScalarField gamma_via_definition(const WeightedGraph& g, const ScalarField& f,
                                        const ScalarField& h) {
  ScalarField fh(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) fh[i] = f[i] * h[i];
  const ScalarField dFh = graphcurv::laplacian_apply(g, fh);
  const ScalarField dF = graphcurv::laplacian_apply(g, f);
  const ScalarField dH = graphcurv::laplacian_apply(g, h);
  ScalarField out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = 0.5 * (dFh[i] - f[i] * dH[i] - h[i] * dF[i]);
  return out;
}

/// Floyd-Warshall hop counts; -1 encodes unreachable internally via a large
/// sentinel. Independent of the BFS implementation.
inline std::vector<int> floyd_warshall(const WeightedGraph& g) {
  const int n = g.vertex_count();
  constexpr int kInf = 1 << 28;
  std::vector<int> d(static_cast<std::size_t>(n) * n, kInf);
  auto at = [&](int x, int y) -> int& { return d[static_cast<std::size_t>(x) * n + y]; };
  for (int x = 0; x < n; ++x) at(x, x) = 0;
  for (int x = 0; x < n; ++x)
    for (const auto& nb : g.neighbors(x)) at(x, nb.v) = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (at(i, k) + at(k, j) < at(i, j)) at(i, j) = at(i, k) + at(k, j);
  for (auto& v : d)
    if (v >= kInf) v = -1;
  return d;
}

/// Projected-gradient resistance oracle with random restarts. Maximizes the
/// scale-free ratio (f(y0) - f(x0)) / sqrt(||Gamma f||_inf) (every evaluation
/// is a valid lower bound on rho) by first-improvement moves along the
/// objective direction and the coordinate axes with a shrinking step, after a
/// radial projection onto the unit Gamma ball.
inline double pgd_resistance(const WeightedGraph& g, int x0, int y0, std::uint64_t seed,
                             int restarts = 12) {
  if (x0 == y0) return 0.0;
  const int n = g.vertex_count();
  std::vector<int> vars;
  for (int x = 0; x < n; ++x)
    if (x != x0) vars.push_back(x);

  auto ratio = [&](const ScalarField& f) {
    const ScalarField gf = graphcurv::gamma(g, f);
    double m = 0.0;
    for (const double v : gf) m = std::max(m, v);
    if (m <= 0.0) return 0.0;
    return (f[static_cast<std::size_t>(y0)] - f[static_cast<std::size_t>(x0)]) / std::sqrt(m);
  };

  double best = 0.0;
  for (int restart = 0; restart < restarts; ++restart) {
    std::mt19937_64 eng(seed * 1000003ULL + static_cast<std::uint64_t>(restart));
    ScalarField f(static_cast<std::size_t>(n), 0.0);
    for (const int x : vars) f[static_cast<std::size_t>(x)] = graphcurv::rng::uniform(eng, -1.0, 1.0);
    f[static_cast<std::size_t>(y0)] += 1.0;  // bias toward the objective
    double value = ratio(f);
    double step = 0.5;
    while (step > 1e-9) {
      bool improved = false;
      for (int move = 0; move < static_cast<int>(vars.size()) * 2 + 1; ++move) {
        ScalarField cand = f;
        if (move == 0) {
          cand[static_cast<std::size_t>(y0)] += step;
        } else {
          const int x = vars[static_cast<std::size_t>((move - 1) / 2)];
          cand[static_cast<std::size_t>(x)] += (move % 2 == 1) ? step : -step;
        }
        const double v = ratio(cand);
        if (v > value + 1e-15) {
          f = cand;
          value = v;
          improved = true;
        }
      }
      if (!improved) step *= 0.5;
    }
    best = std::max(best, value);
  }
  return best;
}

/// Erdos-Renyi instance made connected by deterministically advancing the
/// seed; keeps the whole corpus usable for distance-based checks.
inline WeightedGraph er_connected(int size, double p, std::uint64_t seed) {
  for (std::uint64_t s = seed;; s += 1000) {
    WeightedGraph g = graphcurv::generate_family(
        graphcurv::Family::ErdosRenyi, {.size = size, .edgeProbability = p, .seed = s},
        MeasureRule::Unit);
    if (g.connected()) return g;
  }
}

struct NamedGraph {
  std::string id;
  WeightedGraph g;
};

/// Default corpus: complete K_N (N <= 8), cycles C_N (N <= 10), paths, stars,
/// hypercubes Q_d (d <= 3), and 20 seeded random graphs with <= 12 vertices.
/// All connected, unit weights and measure.
inline const std::vector<NamedGraph>& corpus() {
  using graphcurv::Family;
  using graphcurv::generate_family;
  static const std::vector<NamedGraph> graphs = [] {
    std::vector<NamedGraph> out;
    auto add = [&](const std::string& id, WeightedGraph g) { out.push_back({id, std::move(g)}); };
    for (int n = 2; n <= 8; ++n)
      add("complete_" + std::to_string(n), generate_family(Family::Complete, {.size = n}, MeasureRule::Unit));
    for (int n = 3; n <= 10; ++n)
      add("cycle_" + std::to_string(n), generate_family(Family::Cycle, {.size = n}, MeasureRule::Unit));
    for (int n = 2; n <= 8; ++n)
      add("path_" + std::to_string(n), generate_family(Family::Path, {.size = n}, MeasureRule::Unit));
    for (int leaves = 2; leaves <= 6; ++leaves)
      add("star_" + std::to_string(leaves), generate_family(Family::Star, {.size = leaves}, MeasureRule::Unit));
    for (int d = 1; d <= 3; ++d)
      add("hypercube_" + std::to_string(d), generate_family(Family::Hypercube, {.size = d}, MeasureRule::Unit));
    for (int i = 0; i < 20; ++i) {
      const int size = 6 + i % 7;  // 6..12
      add("random_" + std::to_string(i), er_connected(size, 0.5, 100 + static_cast<std::uint64_t>(i)));
    }
    return out;
  }();
  return graphs;
}

}  // namespace testutil
