#pragma once

#include <Eigen/Dense>

#include "graphcurv/bakry_emery.hpp"
#include "graphcurv/graph.hpp"

namespace graphcurv {

/// Dense spectral realization of P_t = e^{t Delta}. The Laplacian is
/// symmetrized by conjugation with diag(sqrt(m)); columns of `basis` are the
/// orthonormal eigenvectors of the symmetrized operator, so the physical
/// eigenfunctions M^{-1/2} basis are orthonormal for the m-weighted inner
/// product. Eigenvalues are ascending (most negative first, 0 last on a
/// connected graph).
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd basis;
  Eigen::VectorXd measureRoot;

  int vertex_count() const noexcept { return static_cast<int>(eigenvalues.size()); }

  /// |second largest eigenvalue|; the decay rate toward equilibrium on a
  /// connected graph. Zero for a single vertex.
  double spectral_gap() const {
    const int n = vertex_count();
    return n < 2 ? 0.0 : -eigenvalues(n - 2);
  }
};

inline SpectralDecomposition spectral_decompose(const WeightedGraph& g) {
  const int n = g.vertex_count();
  Eigen::VectorXd root(n);
  for (int x = 0; x < n; ++x) root(x) = std::sqrt(g.measure(x));
  Eigen::MatrixXd lsym = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    lsym(x, x) = -g.degree(x) / g.measure(x);
    for (const auto& nb : g.neighbors(x)) lsym(x, nb.v) = nb.w / (root(x) * root(nb.v));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lsym);
  if (es.info() != Eigen::Success) throw SolverError("Laplacian eigendecomposition failed");
  SpectralDecomposition d;
  d.eigenvalues = es.eigenvalues();
  d.basis = es.eigenvectors();
  d.measureRoot = std::move(root);
  const double top = d.eigenvalues(n - 1);
  const double bottom = d.eigenvalues(0);
  if (top > 1e-10 * std::max(1.0, -bottom)) {
    throw SolverError("Laplacian spectrum has a positive eigenvalue: " + std::to_string(top));
  }
  return d;
}

/// P_t f = sum_i e^{t lambda_i} <f, phi_i>_m phi_i. P_0 is the identity.
inline ScalarField heat_apply(const SpectralDecomposition& d, const ScalarField& f, double t) {
  if (std::isnan(t) || t < 0.0) throw ValidationError("heat_apply requires t >= 0");
  require_field_size(f, d.vertex_count(), "heat_apply");
  if (t == 0.0) return f;
  const int n = d.vertex_count();
  Eigen::VectorXd u(n);
  for (int x = 0; x < n; ++x) u(x) = d.measureRoot(x) * f[static_cast<std::size_t>(x)];
  Eigen::VectorXd coeff = d.basis.transpose() * u;
  for (int i = 0; i < n; ++i) coeff(i) *= std::exp(t * d.eigenvalues(i));
  const Eigen::VectorXd back = d.basis * coeff;
  ScalarField out(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) out[static_cast<std::size_t>(x)] = back(x) / d.measureRoot(x);
  return out;
}

namespace detail {

/// (1 - e^{-2Kt}) / (Kn) extended continuously: 2t/n at K = 0, zero at n = inf.
inline double semigroup_coefficient(double k, double n, double t) {
  if (std::isinf(n)) return 0.0;
  if (std::abs(k) < 1e-12) return 2.0 * t / n;
  return (1.0 - std::exp(-2.0 * k * t)) / (k * n);
}

}  // namespace detail

/// Pointwise slack of the semigroup characterization of CD(K, n):
///   e^{-2Kt} P_t Gamma f - (1 - e^{-2Kt})/(Kn) (Delta P_t f)^2 - Gamma P_t f.
/// Nonnegative (up to tolerance) whenever the graph satisfies CD(K, n).
inline ScalarField semigroup_residual(const WeightedGraph& g, const SpectralDecomposition& d,
                                      const ScalarField& f, double t, double k, double n) {
  detail::require_dimension(n);
  if (std::isnan(t) || t < 0.0) throw ValidationError("semigroup_residual requires t >= 0");
  const ScalarField gf = gamma(g, f);
  const ScalarField ptGf = heat_apply(d, gf, t);
  const ScalarField ptF = heat_apply(d, f, t);
  const ScalarField lapPtF = laplacian_apply(g, ptF);
  const ScalarField gammaPtF = gamma(g, ptF);
  const double decay = std::exp(-2.0 * k * t);
  const double coeff = detail::semigroup_coefficient(k, n, t);
  ScalarField slack(f.size());
  for (std::size_t x = 0; x < slack.size(); ++x) {
    slack[x] = decay * ptGf[x] - coeff * lapPtF[x] * lapPtF[x] - gammaPtF[x];
  }
  return slack;
}

/// sup-norm of Gamma P_t f along an ascending time grid. On a connected graph
/// the series tends to zero; under CD(K, n) it stays below e^{-2Kt} ||Gamma f||_inf.
inline std::vector<double> gradient_decay(const WeightedGraph& g, const SpectralDecomposition& d,
                                          const ScalarField& f, const std::vector<double>& ts) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (std::isnan(ts[i]) || ts[i] < 0.0) throw ValidationError("gradient_decay requires t >= 0");
    if (i > 0 && ts[i] < ts[i - 1]) throw ValidationError("gradient_decay times must be ascending");
  }
  std::vector<double> sup;
  sup.reserve(ts.size());
  for (const double t : ts) {
    const ScalarField gPt = gamma(g, heat_apply(d, f, t));
    double m = 0.0;
    for (const double v : gPt) m = std::max(m, std::abs(v));
    sup.push_back(m);
  }
  return sup;
}

}  // namespace graphcurv
