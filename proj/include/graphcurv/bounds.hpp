#pragma once

#include <optional>

#include "graphcurv/bakry_emery.hpp"
#include "graphcurv/distances.hpp"
#include "graphcurv/resistance.hpp"

namespace graphcurv {

namespace detail {

inline void require_positive(double v, const char* what) {
  if (std::isnan(v) || !(v > 0.0)) throw ValidationError(std::string(what) + " must be positive");
}

/// arcsin(1 / sqrt(Kn / (2 deg) + 1)). The argument is <= 1 analytically;
/// anything above 1 + 1e-12 is an error, smaller excess is clamped as roundoff.
inline double arcsin_term(double k, double n, double deg) {
  double u = 1.0 / std::sqrt(k * n / (2.0 * deg) + 1.0);
  if (u > 1.0) {
    if (u > 1.0 + 1e-12) throw SolverError("arcsin argument exceeds 1 beyond roundoff");
    u = 1.0;
  }
  return std::asin(u);
}

/// Recursive adaptive Simpson with Richardson correction.
template <class F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol, int depth = 60) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace detail

/// (sqrt(2 degX0) + sqrt(2 degY0)) / K, the n -> inf limit of the two-arcsin
/// resistance bound (arcsin(u) ~ u).
inline double limit_bound_infinite_n(double degX0, double degY0, double k) {
  detail::require_positive(k, "curvature K");
  detail::require_positive(degX0, "degree");
  detail::require_positive(degY0, "degree");
  return (std::sqrt(2.0 * degX0) + std::sqrt(2.0 * degY0)) / k;
}

/// sqrt(n/K) (arcsin(1/sqrt(Kn/(2 degX0) + 1)) + arcsin(1/sqrt(Kn/(2 degY0) + 1))),
/// the resistance-distance bound under CD(K, n) with K > 0. n = inf delegates
/// to limit_bound_infinite_n.
inline double theorem_bound(double degX0, double degY0, double k, double n) {
  detail::require_dimension(n);
  if (std::isinf(n)) return limit_bound_infinite_n(degX0, degY0, k);
  detail::require_positive(k, "curvature K");
  detail::require_positive(degX0, "degree");
  detail::require_positive(degY0, "degree");
  return std::sqrt(n / k) * (detail::arcsin_term(k, n, degX0) + detail::arcsin_term(k, n, degY0));
}

/// sqrt(2 n Deg_max / K) arcsin(1/sqrt(Kn/(2 Deg_max) + 1)), the combinatorial
/// diameter bound. At n = inf this becomes its analytic limit 2 Deg_max / K.
inline double corollary_bound(double degMax, double k, double n) {
  detail::require_dimension(n);
  detail::require_positive(k, "curvature K");
  detail::require_positive(degMax, "degree");
  if (std::isinf(n)) return 2.0 * degMax / k;
  return std::sqrt(2.0 * n * degMax / k) * detail::arcsin_term(k, n, degMax);
}

/// Quadrature-vs-closed-form check of
///   int_0^inf sqrt(Kn) e^{-Kt} / sqrt(C - e^{-2Kt}) dt = sqrt(n/K) arcsin(1/sqrt(C))
/// for C > 1. Returns the adaptive-quadrature value and the closed form.
struct IntegralCheck {
  double quadrature = 0.0;
  double closedForm = 0.0;
};

inline IntegralCheck arcsin_integral_check(double c, double k, double n) {
  if (std::isnan(c) || !(c > 1.0)) throw ValidationError("arcsin integral requires C > 1");
  detail::require_positive(k, "curvature K");
  if (std::isinf(n)) throw ValidationError("arcsin integral requires finite n");
  detail::require_positive(n, "dimension n");
  IntegralCheck out;
  out.closedForm = std::sqrt(n / k) * std::asin(1.0 / std::sqrt(c));
  const double scale = std::sqrt(k * n);
  auto integrand = [&](double t) { return scale * std::exp(-k * t) / std::sqrt(c - std::exp(-2.0 * k * t)); };
  const double horizon = 37.0 / k;  // e^{-KT} ~ 8.5e-17: tail below double precision
  out.quadrature = detail::adaptive_simpson(integrand, 0.0, horizon, 1e-11 * out.closedForm);
  return out;
}

enum class ReportStatus { Verified, InapplicableNonpositiveK, SolverIncomplete };

inline const char* to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::Verified: return "verified";
    case ReportStatus::InapplicableNonpositiveK: return "inapplicable_nonpositive_K";
    case ReportStatus::SolverIncomplete: return "solver_incomplete";
  }
  return "?";
}

/// End-to-end verification record for one graph at one dimension. Pair and
/// corollary verdicts are populated only when status == Verified.
struct BoundReport {
  std::string graphId;
  double n = 0.0;
  double globalK = 0.0;
  double usedK = 0.0;
  bool kOverridden = false;
  double degMax = 0.0;
  int diamD = 0;
  ReportStatus status = ReportStatus::InapplicableNonpositiveK;

  struct PairEntry {
    int x0 = 0;
    int y0 = 0;
    int d = 0;
    double rho = 0.0;
    double theoremRHS = 0.0;
    double margin = 0.0;
    bool pass = false;
  };
  std::vector<PairEntry> pairs;
  bool pairsExact = true;

  double corollaryRHS = 0.0;
  double corollaryMargin = 0.0;
  bool corollaryPass = false;

  std::string error;  // populated for SolverIncomplete

  bool all_pairs_pass() const {
    for (const auto& p : pairs)
      if (!p.pass) return false;
    return true;
  }
};

struct VerifyOptions {
  double tol = 1e-6;          // slack added to each inequality check
  double solverTol = 1e-8;    // resistance duality-gap bound
  int workers = default_workers();
  int maxExactVertices = 300;
  std::optional<double> overrideK;  // marked in the report when set
};

namespace detail {

/// Distance and resistance tables shared across dimensions in a sweep;
/// resistance does not depend on n.
struct VerifyCache {
  std::optional<DistanceMatrix> distances;
  std::optional<DegreeRatio> degrees;
  std::optional<PairSelection> pairs;
  std::optional<std::vector<double>> rho;
};

inline BoundReport verify_graph_cached(const WeightedGraph& g, double n, const VerifyOptions& opt,
                                       const std::string& graphId, VerifyCache& cache) {
  require_dimension(n);
  if (!(opt.tol > 0.0)) throw ValidationError("verification tolerance must be positive");
  BoundReport report;
  report.graphId = graphId;
  report.n = n;

  if (!g.connected()) {
    throw DisconnectedGraphError("bound verification requires a connected graph; found " +
                                     std::to_string(g.components().size()) + " components",
                                 g.components());
  }
  if (!cache.degrees) cache.degrees = degree_ratio(g);
  if (!cache.distances) cache.distances = combinatorial_distances(g);
  report.degMax = cache.degrees->max;
  report.diamD = cache.distances->diameter();

  const CurvatureResult cur = curvature_all(g, n, opt.workers);
  report.globalK = cur.globalK;
  report.usedK = opt.overrideK.value_or(cur.globalK);
  report.kOverridden = opt.overrideK.has_value();

  if (g.vertex_count() == 1) {  // trivial graph: no pairs, diameter zero
    report.status = ReportStatus::Verified;
    report.corollaryRHS = 0.0;
    report.corollaryMargin = 0.0;
    report.corollaryPass = true;
    return report;
  }

  const double k = report.usedK;
  if (!(k > 0.0) || std::isinf(k)) {
    report.status = ReportStatus::InapplicableNonpositiveK;
    return report;
  }

  try {
    if (!cache.pairs) cache.pairs = select_pairs(*cache.distances, opt.maxExactVertices);
    if (!cache.rho) {
      BarrierOptions solver;
      solver.tol = opt.solverTol;
      cache.rho = resistance_all(g, cache.pairs->pairs, solver, opt.workers);
    }
    report.pairsExact = cache.pairs->exact;
    const auto& deg = cache.degrees->perVertex;
    for (std::size_t i = 0; i < cache.pairs->pairs.size(); ++i) {
      BoundReport::PairEntry e;
      e.x0 = cache.pairs->pairs[i].first;
      e.y0 = cache.pairs->pairs[i].second;
      e.d = cache.distances->at(e.x0, e.y0);
      e.rho = (*cache.rho)[i];
      e.theoremRHS = theorem_bound(deg[static_cast<std::size_t>(e.x0)],
                                   deg[static_cast<std::size_t>(e.y0)], k, n);
      e.margin = e.theoremRHS - e.rho;
      e.pass = e.rho <= e.theoremRHS + opt.tol;
      report.pairs.push_back(e);
    }
    report.corollaryRHS = corollary_bound(report.degMax, k, n);
    report.corollaryMargin = report.corollaryRHS - report.diamD;
    report.corollaryPass = report.diamD <= report.corollaryRHS + opt.tol;
    report.status = ReportStatus::Verified;
  } catch (const SolverError& e) {
    report.status = ReportStatus::SolverIncomplete;
    report.error = e.what();
    report.pairs.clear();
  }
  return report;
}

}  // namespace detail

/// Computes globalK = min_x K(x, n), then checks every sampled pair against
/// the two-arcsin bound and the diameter against the corollary bound.
inline BoundReport verify_graph(const WeightedGraph& g, double n, const VerifyOptions& opt = {},
                                const std::string& graphId = "graph") {
  detail::VerifyCache cache;
  return detail::verify_graph_cached(g, n, opt, graphId, cache);
}

/// Per-dimension reports over an ascending grid plus the index of the
/// applicable entry minimizing the corollary bound (-1 when none applies).
struct SweepResult {
  std::vector<BoundReport> entries;
  int bestIndex = -1;
};

inline SweepResult best_dimension_sweep(const WeightedGraph& g, const std::vector<double>& nGrid,
                                        const VerifyOptions& opt = {},
                                        const std::string& graphId = "graph") {
  if (nGrid.empty()) throw ValidationError("dimension grid must not be empty");
  for (std::size_t i = 0; i < nGrid.size(); ++i) {
    detail::require_dimension(nGrid[i]);
    if (i > 0 && !(nGrid[i] > nGrid[i - 1])) {
      throw ValidationError("dimension grid must be strictly ascending");
    }
  }
  SweepResult sweep;
  detail::VerifyCache cache;
  for (const double n : nGrid) {
    sweep.entries.push_back(detail::verify_graph_cached(g, n, opt, graphId, cache));
    const BoundReport& r = sweep.entries.back();
    if (r.status == ReportStatus::Verified && g.vertex_count() > 1) {
      if (sweep.bestIndex < 0 || r.corollaryRHS < sweep.entries[static_cast<std::size_t>(sweep.bestIndex)].corollaryRHS) {
        sweep.bestIndex = static_cast<int>(sweep.entries.size()) - 1;
      }
    }
  }
  return sweep;
}

}  // namespace graphcurv
