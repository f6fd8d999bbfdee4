#pragma once

#include <limits>

#include <Eigen/Dense>

#include "graphcurv/distances.hpp"
#include "graphcurv/graph.hpp"

namespace graphcurv {

// Gamma(f,g)(x) = (1/2m(x)) sum_y w(x,y) (f(y)-f(x)) (g(y)-g(x)), which is the
// carre du champ 2*Gamma(f,g) = Delta(fg) - f*Delta(g) - g*Delta(f) expanded.
inline double gamma_at(const WeightedGraph& g, const ScalarField& f, const ScalarField& h, int x) {
  double acc = 0.0;
  const double fx = f[static_cast<std::size_t>(x)];
  const double hx = h[static_cast<std::size_t>(x)];
  for (const auto& nb : g.neighbors(x)) {
    acc += nb.w * (f[static_cast<std::size_t>(nb.v)] - fx) * (h[static_cast<std::size_t>(nb.v)] - hx);
  }
  return acc / (2.0 * g.measure(x));
}

inline ScalarField gamma(const WeightedGraph& g, const ScalarField& f, const ScalarField& h) {
  require_field_size(f, g.vertex_count(), "gamma");
  require_field_size(h, g.vertex_count(), "gamma");
  ScalarField out(f.size());
  for (int x = 0; x < g.vertex_count(); ++x) out[static_cast<std::size_t>(x)] = gamma_at(g, f, h, x);
  return out;
}

inline ScalarField gamma(const WeightedGraph& g, const ScalarField& f) { return gamma(g, f, f); }

/// 2*Gamma2(f,h) = Delta Gamma(f,h) - Gamma(f, Delta h) - Gamma(h, Delta f),
/// evaluated with everything local to the 2-ball of x.
inline double gamma2_at(const WeightedGraph& g, const ScalarField& f, const ScalarField& h, int x) {
  const double gfhAtX = gamma_at(g, f, h, x);
  const double mx = g.measure(x);
  const double lfAtX = laplacian_at(g, f, x);
  const double lhAtX = laplacian_at(g, h, x);

  double dGamma = 0.0;
  double gammaFLapH = 0.0;
  double gammaHLapF = 0.0;
  const double fx = f[static_cast<std::size_t>(x)];
  const double hx = h[static_cast<std::size_t>(x)];
  for (const auto& nb : g.neighbors(x)) {
    dGamma += nb.w * (gamma_at(g, f, h, nb.v) - gfhAtX);
    const double lfAtY = laplacian_at(g, f, nb.v);
    const double lhAtY = laplacian_at(g, h, nb.v);
    gammaFLapH += nb.w * (f[static_cast<std::size_t>(nb.v)] - fx) * (lhAtY - lhAtX);
    gammaHLapF += nb.w * (h[static_cast<std::size_t>(nb.v)] - hx) * (lfAtY - lfAtX);
  }
  dGamma /= mx;
  gammaFLapH /= 2.0 * mx;
  gammaHLapF /= 2.0 * mx;
  return 0.5 * (dGamma - gammaFLapH - gammaHLapF);
}

inline ScalarField gamma2(const WeightedGraph& g, const ScalarField& f, const ScalarField& h) {
  require_field_size(f, g.vertex_count(), "gamma2");
  require_field_size(h, g.vertex_count(), "gamma2");
  const ScalarField gfh = gamma(g, f, h);
  const ScalarField lf = laplacian_apply(g, f);
  const ScalarField lh = laplacian_apply(g, h);
  const ScalarField dGamma = laplacian_apply(g, gfh);
  const ScalarField gfdh = gamma(g, f, lh);
  const ScalarField ghdf = gamma(g, h, lf);
  ScalarField out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (dGamma[i] - gfdh[i] - ghdf[i]);
  return out;
}

inline ScalarField gamma2(const WeightedGraph& g, const ScalarField& f) { return gamma2(g, f, f); }

/// Matrices of the quadratic forms f -> Gamma f(x), f -> Gamma2 f(x) and the
/// linear form f -> Delta f(x) on B2(x) \ {x} under the gauge f(x) = 0.
/// Coordinates list sphere-1 vertices first, then sphere-2, each sorted.
/// gammaForm is diagonal, positive exactly on sphere-1; lapRow is supported
/// on sphere-1; the sphere-2 block of gamma2Form is positive definite.
struct LocalCurvatureForms {
  int center = 0;
  std::vector<int> sphere1;
  std::vector<int> sphere2;
  Eigen::MatrixXd gammaForm;
  Eigen::MatrixXd gamma2Form;
  Eigen::RowVectorXd lapRow;

  int dim() const noexcept { return static_cast<int>(sphere1.size() + sphere2.size()); }
  int sphere1_count() const noexcept { return static_cast<int>(sphere1.size()); }

  /// Lifts coordinates to a full field (zero at the center and outside B2).
  ScalarField lift(const Eigen::VectorXd& coords, int vertexCount) const {
    ScalarField f(static_cast<std::size_t>(vertexCount), 0.0);
    int i = 0;
    for (const int v : sphere1) f[static_cast<std::size_t>(v)] = coords(i++);
    for (const int v : sphere2) f[static_cast<std::size_t>(v)] = coords(i++);
    return f;
  }
};

/// Assembles the local forms by evaluating the pointwise operators on the
/// coordinate basis fields.
inline LocalCurvatureForms local_forms(const WeightedGraph& g, int x) {
  LocalCurvatureForms forms;
  forms.center = x;
  const TwoBall ball = two_ball(g, x);
  forms.sphere1 = ball.sphere1;
  forms.sphere2 = ball.sphere2;
  const int dim = forms.dim();
  forms.gammaForm = Eigen::MatrixXd::Zero(dim, dim);
  forms.gamma2Form = Eigen::MatrixXd::Zero(dim, dim);
  forms.lapRow = Eigen::RowVectorXd::Zero(dim);
  if (dim == 0) return forms;

  std::vector<int> coords = forms.sphere1;
  coords.insert(coords.end(), forms.sphere2.begin(), forms.sphere2.end());
  std::vector<ScalarField> basis(static_cast<std::size_t>(dim),
                                 ScalarField(static_cast<std::size_t>(g.vertex_count()), 0.0));
  for (int i = 0; i < dim; ++i) basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(coords[static_cast<std::size_t>(i)])] = 1.0;

  for (int i = 0; i < dim; ++i) {
    forms.lapRow(i) = laplacian_at(g, basis[static_cast<std::size_t>(i)], x);
    for (int j = 0; j <= i; ++j) {
      const double gv = gamma_at(g, basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)], x);
      const double g2v = gamma2_at(g, basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)], x);
      forms.gammaForm(i, j) = gv;
      forms.gammaForm(j, i) = gv;
      forms.gamma2Form(i, j) = g2v;
      forms.gamma2Form(j, i) = g2v;
    }
  }
  return forms;
}

namespace detail {

inline void require_dimension(double n) {
  if (std::isnan(n) || !(n > 0.0)) throw ValidationError("dimension n must lie in (0, inf]");
}

/// Gamma2 quadratic form minus the (1/n) (Delta f)^2 rank-one term; the
/// dimension term drops out at n = inf.
inline Eigen::MatrixXd cd_form(const LocalCurvatureForms& forms, double n) {
  Eigen::MatrixXd q = forms.gamma2Form;
  if (!std::isinf(n)) q -= (1.0 / n) * (forms.lapRow.transpose() * forms.lapRow);
  return q;
}

inline double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline double one_norm(const Eigen::MatrixXd& m) {
  return m.rows() == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace detail

/// Largest K with Gamma2(f)(x) >= (1/n)(Delta f(x))^2 + K Gamma f(x) for all
/// f, computed by eliminating the sphere-2 block via a Schur complement and
/// taking the smallest eigenvalue of D^{-1/2} S D^{-1/2} on sphere-1.
/// Returns +inf for an isolated vertex.
inline double curvature_at(const LocalCurvatureForms& forms, double n) {
  detail::require_dimension(n);
  const int dim = forms.dim();
  if (dim == 0) return std::numeric_limits<double>::infinity();
  const int k1 = forms.sphere1_count();
  const int k2 = dim - k1;
  const Eigen::MatrixXd q = detail::cd_form(forms, n);

  Eigen::MatrixXd s;
  if (k2 > 0) {
    const Eigen::MatrixXd q22 = q.bottomRightCorner(k2, k2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q22, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().maxCoeff();
    if (!(lmin > 0.0) || lmax / lmin > 1e12) {
      throw SolverError("sphere-2 block of the curvature form is numerically singular");
    }
    const Eigen::MatrixXd q12 = q.topRightCorner(k1, k2);
    s = q.topLeftCorner(k1, k1) - q12 * q22.ldlt().solve(q12.transpose());
  } else {
    s = q;
  }

  Eigen::VectorXd dInvSqrt(k1);
  for (int i = 0; i < k1; ++i) dInvSqrt(i) = 1.0 / std::sqrt(forms.gammaForm(i, i));
  Eigen::MatrixXd scaled = dInvSqrt.asDiagonal() * s * dInvSqrt.asDiagonal();
  scaled = 0.5 * (scaled + scaled.transpose()).eval();
  return detail::min_eigenvalue(scaled);
}

inline double curvature_at(const WeightedGraph& g, int x, double n) {
  return curvature_at(local_forms(g, x), n);
}

/// Per-vertex curvature function K(x, n) plus the global minimum.
struct CurvatureResult {
  double n = 0.0;
  std::vector<double> perVertexK;
  double globalK = 0.0;
};

inline CurvatureResult curvature_all(const WeightedGraph& g, double n,
                                     int workers = default_workers()) {
  detail::require_dimension(n);
  CurvatureResult r;
  r.n = n;
  r.perVertexK.resize(static_cast<std::size_t>(g.vertex_count()));
  parallel_for(g.vertex_count(), workers,
               [&](int x) { r.perVertexK[static_cast<std::size_t>(x)] = curvature_at(g, x, n); });
  r.globalK = std::numeric_limits<double>::infinity();
  for (const double k : r.perVertexK) r.globalK = std::min(r.globalK, k);
  return r;
}

/// Independent verification path: bisection on K, accepting K when
/// Q(n) - K * gammaForm is positive semidefinite on the full coordinate set
/// (smallest eigenvalue >= -1e-12 times the matrix 1-norm).
inline double curvature_oracle(const WeightedGraph& g, int x, double n) {
  detail::require_dimension(n);
  const LocalCurvatureForms forms = local_forms(g, x);
  if (forms.dim() == 0) return std::numeric_limits<double>::infinity();
  if (forms.dim() > 40) {
    throw SolverError("two-ball too large for the bisection oracle (" +
                      std::to_string(forms.dim()) + " > 40 coordinates)");
  }
  const Eigen::MatrixXd q = detail::cd_form(forms, n);
  const Eigen::MatrixXd& a = forms.gammaForm;
  auto psd = [&](double k) {
    const Eigen::MatrixXd m = q - k * a;
    const double scale = std::max(detail::one_norm(m), 1.0);
    return detail::min_eigenvalue(m) >= -1e-12 * scale;
  };

  double dMin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < forms.sphere1_count(); ++i) dMin = std::min(dMin, a(i, i));
  double radius = (detail::one_norm(q) + 1.0) / dMin + 1.0;
  double lo = -radius;
  double hi = radius;
  for (int guard = 0; guard < 64 && !psd(lo); ++guard) lo *= 2.0;
  for (int guard = 0; guard < 64 && psd(hi); ++guard) hi *= 2.0;
  if (!psd(lo) || psd(hi)) throw SolverError("bisection oracle failed to bracket the curvature");
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (psd(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

/// Outcome of checking CD(K, n). On failure the witness field, lifted from
/// the violating eigenvector, satisfies
/// Gamma2(f)(x) - (1/n)(Delta f(x))^2 - K Gamma f(x) < 0.
struct CdCheck {
  bool holds = false;
  double globalK = 0.0;
  int witnessVertex = -1;
  ScalarField witnessField;
  double witnessSlack = 0.0;
};

inline CdCheck verify_cd(const WeightedGraph& g, double k, double n,
                         int workers = default_workers()) {
  detail::require_dimension(n);
  const CurvatureResult cur = curvature_all(g, n, workers);
  CdCheck check;
  check.globalK = cur.globalK;
  const double tolerance = 1e-9 * (1.0 + std::abs(k));
  if (cur.globalK >= k - tolerance) {
    check.holds = true;
    return check;
  }
  int worst = 0;
  for (int x = 1; x < g.vertex_count(); ++x) {
    if (cur.perVertexK[static_cast<std::size_t>(x)] < cur.perVertexK[static_cast<std::size_t>(worst)]) worst = x;
  }
  const LocalCurvatureForms forms = local_forms(g, worst);
  const Eigen::MatrixXd m = detail::cd_form(forms, n) - k * forms.gammaForm;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd v = es.eigenvectors().col(0);  // most negative eigenvalue
  check.holds = false;
  check.witnessVertex = worst;
  check.witnessField = forms.lift(v, g.vertex_count());
  const double lap = laplacian_at(g, check.witnessField, worst);
  const double dimTerm = std::isinf(n) ? 0.0 : lap * lap / n;
  check.witnessSlack = gamma2_at(g, check.witnessField, check.witnessField, worst) - dimTerm -
                       k * gamma_at(g, check.witnessField, check.witnessField, worst);
  return check;
}

}  // namespace graphcurv
