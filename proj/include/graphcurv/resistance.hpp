#pragma once

#include <optional>

#include <Eigen/Dense>

#include "graphcurv/bakry_emery.hpp"
#include "graphcurv/distances.hpp"
#include "graphcurv/graph.hpp"

namespace graphcurv {

struct BarrierOptions {
  double tol = 1e-8;  // certified duality-gap bound
  double t0 = 1.0;
  double tFactor = 10.0;
  int maxNewtonPerStage = 50;
  int maxStages = 60;
  double newtonTol = 1e-9;  // stop centering at decrement^2 / 2 below this
};

/// Solution of rho(x0, y0) = sup { f(y0) - f(x0) : ||Gamma f||_inf <= 1 } with
/// the gauge f(x0) = 0. kktResidual is the certified duality-gap bound from
/// the barrier method combined with the scaled stationarity residual.
struct ResistanceSolution {
  int source = 0;
  int target = 0;
  double rho = 0.0;
  ScalarField optimizer;
  double kktResidual = 0.0;
  std::vector<int> activeVertices;  // Gamma(optimizer) within tolerance of 1
  int newtonSteps = 0;
  int stages = 0;
};

namespace detail {

/// Workspace for the barrier subproblem: variables are f restricted to
/// V \ {x0}; each vertex contributes the constraint Gamma f(x) <= 1.
class ResistanceProblem {
 public:
  ResistanceProblem(const WeightedGraph& g, int x0) : g_(g), x0_(x0) {
    const int n = g.vertex_count();
    varOf_.assign(static_cast<std::size_t>(n), -1);
    vertexOf_.reserve(static_cast<std::size_t>(n - 1));
    for (int x = 0; x < n; ++x) {
      if (x == x0) continue;
      varOf_[static_cast<std::size_t>(x)] = static_cast<int>(vertexOf_.size());
      vertexOf_.push_back(x);
    }
  }

  int var_count() const noexcept { return static_cast<int>(vertexOf_.size()); }
  int var_of(int vertex) const { return varOf_[static_cast<std::size_t>(vertex)]; }

  ScalarField field_of(const Eigen::VectorXd& z) const {
    ScalarField f(static_cast<std::size_t>(g_.vertex_count()), 0.0);
    for (int i = 0; i < var_count(); ++i) f[static_cast<std::size_t>(vertexOf_[static_cast<std::size_t>(i)])] = z(i);
    return f;
  }

  /// Gamma f at every vertex for the gauged field.
  ScalarField gamma_values(const Eigen::VectorXd& z) const { return gamma(g_, field_of(z)); }

  bool feasible(const ScalarField& gammaVals) const {
    for (const double v : gammaVals) {
      if (!(v < 1.0)) return false;
    }
    return true;
  }

  double barrier_objective(double t, int y0, const Eigen::VectorXd& z,
                           const ScalarField& gammaVals) const {
    double phi = -t * z(var_of(y0));
    for (const double v : gammaVals) phi -= std::log(1.0 - v);
    return phi;
  }

  /// Gradient and Hessian of the barrier objective at z.
  void derivatives(double t, int y0, const Eigen::VectorXd& z, const ScalarField& gammaVals,
                   Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
    const int nv = var_count();
    grad = Eigen::VectorXd::Zero(nv);
    grad(var_of(y0)) = -t;
    hess = Eigen::MatrixXd::Zero(nv, nv);

    const ScalarField f = field_of(z);
    std::vector<int> supportVar;
    std::vector<double> supportGrad;
    for (int x = 0; x < g_.vertex_count(); ++x) {
      const double slack = 1.0 - gammaVals[static_cast<std::size_t>(x)];
      const double inv = 1.0 / slack;
      const double mx = g_.measure(x);

      supportVar.clear();
      supportGrad.clear();
      double gradAtX = 0.0;  // d Gamma_x / d f(x) = -Delta f(x)
      for (const auto& nb : g_.neighbors(x)) {
        const double diff = f[static_cast<std::size_t>(nb.v)] - f[static_cast<std::size_t>(x)];
        gradAtX -= nb.w * diff / mx;
        const int vy = var_of(nb.v);
        if (vy >= 0) {
          supportVar.push_back(vy);
          supportGrad.push_back(nb.w * diff / mx);
          hess(vy, vy) += inv * nb.w / mx;
        }
        const int vx = var_of(x);
        if (vx >= 0) {
          hess(vx, vx) += inv * nb.w / mx;
          if (vy >= 0) {
            hess(vx, vy) -= inv * nb.w / mx;
            hess(vy, vx) -= inv * nb.w / mx;
          }
        }
      }
      if (var_of(x) >= 0) {
        supportVar.push_back(var_of(x));
        supportGrad.push_back(gradAtX);
      }

      for (std::size_t a = 0; a < supportVar.size(); ++a) {
        grad(supportVar[a]) += inv * supportGrad[a];
        for (std::size_t b = 0; b < supportVar.size(); ++b) {
          hess(supportVar[a], supportVar[b]) += inv * inv * supportGrad[a] * supportGrad[b];
        }
      }
    }
  }

 private:
  const WeightedGraph& g_;
  int x0_;
  std::vector<int> varOf_;
  std::vector<int> vertexOf_;
};

}  // namespace detail

/// Log-barrier interior-point maximization of f(y0) - f(x0) over
/// ||Gamma f||_inf <= 1. Starts from f = 0 (strictly feasible), centers by
/// damped Newton with backtracking, multiplies t by tFactor until the duality
/// gap bound |V|/t drops below tol (with a factor-2 margin so the certified
/// kktResidual stays below tol). Exceeding an iteration cap is an error,
/// never a silent approximate answer.
inline ResistanceSolution resistance_distance(const WeightedGraph& g, int x0, int y0,
                                              const BarrierOptions& opt = {}) {
  if (!(opt.tol > 0.0)) throw ValidationError("solver tolerance must be positive");
  if (x0 < 0 || x0 >= g.vertex_count() || y0 < 0 || y0 >= g.vertex_count()) {
    throw ValidationError("resistance endpoints out of range");
  }
  ResistanceSolution sol;
  sol.source = x0;
  sol.target = y0;
  sol.optimizer.assign(static_cast<std::size_t>(g.vertex_count()), 0.0);
  if (x0 == y0) return sol;
  if (!g.connected()) {
    throw DisconnectedGraphError("resistance distance requires a connected graph; found " +
                                     std::to_string(g.components().size()) + " components",
                                 g.components());
  }

  detail::ResistanceProblem problem(g, x0);
  const int nConstraints = g.vertex_count();
  Eigen::VectorXd z = Eigen::VectorXd::Zero(problem.var_count());
  ScalarField gammaVals = problem.gamma_values(z);

  double t = opt.t0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  double lastDecrementSq = 0.0;
  for (int stage = 0;; ++stage) {
    if (stage >= opt.maxStages) {
      throw SolverError("barrier stage cap exceeded (" + std::to_string(opt.maxStages) +
                        " stages); last objective " + std::to_string(z(problem.var_of(y0))));
    }
    ++sol.stages;

    bool centered = false;
    for (int it = 0; it < opt.maxNewtonPerStage; ++it) {
      problem.derivatives(t, y0, z, gammaVals, grad, hess);
      const Eigen::VectorXd step = hess.ldlt().solve(-grad);
      const double decrementSq = -grad.dot(step);
      if (!std::isfinite(decrementSq) || decrementSq < -1e-6) {
        throw SolverError("Newton system became indefinite during barrier centering");
      }
      if (0.5 * decrementSq <= opt.newtonTol) {  // small negatives are roundoff at the center
        lastDecrementSq = std::max(decrementSq, 0.0);
        centered = true;
        break;
      }
      ++sol.newtonSteps;

      const double phi0 = problem.barrier_objective(t, y0, z, gammaVals);
      const double slope = grad.dot(step);
      double alpha = 1.0;
      bool accepted = false;
      for (int half = 0; half < 60; ++half) {
        const Eigen::VectorXd cand = z + alpha * step;
        const ScalarField candGamma = problem.gamma_values(cand);
        if (problem.feasible(candGamma)) {
          const double phi = problem.barrier_objective(t, y0, cand, candGamma);
          if (phi <= phi0 + 0.25 * alpha * slope) {
            z = cand;
            gammaVals = candGamma;
            accepted = true;
            break;
          }
        }
        alpha *= 0.5;
      }
      if (!accepted) throw SolverError("barrier line search failed to make progress");
    }
    if (!centered) {
      throw SolverError("Newton iteration cap exceeded (" + std::to_string(opt.maxNewtonPerStage) +
                        " steps) at barrier stage " + std::to_string(stage));
    }

    if (static_cast<double>(nConstraints) / t <= 0.5 * opt.tol) break;
    t *= opt.tFactor;
  }

  sol.optimizer = problem.field_of(z);
  sol.rho = sol.optimizer[static_cast<std::size_t>(y0)] - sol.optimizer[static_cast<std::size_t>(x0)];
  // Gap is exactly |V|/t at the central point; approximate centering with
  // Newton decrement lambda inflates it by O(lambda).
  sol.kktResidual =
      (static_cast<double>(nConstraints) / t) * (1.0 + 10.0 * std::sqrt(lastDecrementSq));
  const double activeTol = std::max(1e-6, 10.0 * opt.tol);
  for (int x = 0; x < g.vertex_count(); ++x) {
    if (gammaVals[static_cast<std::size_t>(x)] >= 1.0 - activeTol) sol.activeVertices.push_back(x);
  }
  return sol;
}

inline ResistanceSolution resistance_distance(const WeightedGraph& g, int x0, int y0, double tol) {
  BarrierOptions opt;
  opt.tol = tol;
  return resistance_distance(g, x0, y0, opt);
}

/// Unordered pairs to solve. Exact all-pairs up to maxExactVertices vertices;
/// beyond that a BFS-farthest-pair shortlist, flagged as heuristic.
struct PairSelection {
  std::vector<std::pair<int, int>> pairs;
  bool exact = true;
};

inline PairSelection select_pairs(const DistanceMatrix& d, int maxExactVertices = 300) {
  PairSelection sel;
  const int n = d.size();
  if (n <= maxExactVertices) {
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) sel.pairs.push_back({x, y});
    return sel;
  }
  sel.exact = false;
  // Keep pairs whose hop distance is within 1 of the diameter, ranked by
  // distance, capped at 3n.
  std::vector<std::pair<int, std::pair<int, int>>> ranked;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (d.at(x, y) >= d.diameter() - 1) ranked.push_back({-d.at(x, y), {x, y}});
  std::sort(ranked.begin(), ranked.end());
  const std::size_t cap = static_cast<std::size_t>(3 * n);
  if (ranked.size() > cap) ranked.resize(cap);
  for (const auto& [negd, pair] : ranked) sel.pairs.push_back(pair);
  return sel;
}

inline std::vector<double> resistance_all(const WeightedGraph& g,
                                          const std::vector<std::pair<int, int>>& pairs,
                                          const BarrierOptions& opt = {},
                                          int workers = default_workers()) {
  std::vector<double> rho(pairs.size(), 0.0);
  parallel_for(static_cast<int>(pairs.size()), workers, [&](int i) {
    rho[static_cast<std::size_t>(i)] =
        resistance_distance(g, pairs[static_cast<std::size_t>(i)].first,
                            pairs[static_cast<std::size_t>(i)].second, opt)
            .rho;
  });
  return rho;
}

struct DiameterResult {
  double value = 0.0;
  int x = 0;
  int y = 0;
  bool exact = true;
  int pairsEvaluated = 0;
};

/// diam_rho = max over pairs of rho(x, y).
inline DiameterResult resistance_diameter(const WeightedGraph& g, const BarrierOptions& opt = {},
                                          int workers = default_workers(),
                                          int maxExactVertices = 300) {
  DiameterResult r;
  if (g.vertex_count() == 1) return r;
  const DistanceMatrix d = combinatorial_distances(g);
  const PairSelection sel = select_pairs(d, maxExactVertices);
  const std::vector<double> rho = resistance_all(g, sel.pairs, opt, workers);
  r.exact = sel.exact;
  r.pairsEvaluated = static_cast<int>(sel.pairs.size());
  for (std::size_t i = 0; i < sel.pairs.size(); ++i) {
    if (rho[i] > r.value) {
      r.value = rho[i];
      r.x = sel.pairs[i].first;
      r.y = sel.pairs[i].second;
    }
  }
  return r;
}

/// Per-pair check of d(x0, y0) <= sqrt(Deg_max / 2) * rho(x0, y0) + tol,
/// with the tightness ratio d / (sqrt(Deg_max / 2) * rho).
struct DistancePairCheck {
  int x0 = 0;
  int y0 = 0;
  int d = 0;
  double rho = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  bool pass = false;
};

struct DistanceComparison {
  double degMax = 0.0;
  std::vector<DistancePairCheck> pairs;
  bool allPass = true;
  bool exact = true;
};

inline DistanceComparison check_distance_comparison(const WeightedGraph& g, double tol,
                                                    const BarrierOptions& solverOpt = {},
                                                    int workers = default_workers(),
                                                    int maxExactVertices = 300) {
  DistanceComparison cmp;
  cmp.degMax = degree_ratio(g).max;
  if (g.vertex_count() == 1) return cmp;
  const DistanceMatrix d = combinatorial_distances(g);
  const PairSelection sel = select_pairs(d, maxExactVertices);
  const std::vector<double> rho = resistance_all(g, sel.pairs, solverOpt, workers);
  cmp.exact = sel.exact;
  const double factor = std::sqrt(cmp.degMax / 2.0);
  for (std::size_t i = 0; i < sel.pairs.size(); ++i) {
    DistancePairCheck row;
    row.x0 = sel.pairs[i].first;
    row.y0 = sel.pairs[i].second;
    row.d = d.at(row.x0, row.y0);
    row.rho = rho[i];
    row.bound = factor * row.rho;
    row.ratio = row.bound > 0.0 ? row.d / row.bound : 0.0;
    row.pass = row.d <= row.bound + tol;
    cmp.allPass = cmp.allPass && row.pass;
    cmp.pairs.push_back(row);
  }
  return cmp;
}

}  // namespace graphcurv
