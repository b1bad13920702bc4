#include "bobk/birkhoff.hpp"

#include <cmath>
#include <string>

#include "bobk/errors.hpp"

namespace bobk {

std::optional<double> BirkhoffCoords::angle(int n) const {
  if (gamma(n) < kAngleFloor) return std::nullopt;
  return std::arg(at(n));
}

std::vector<double> BirkhoffCoords::gammas() const {
  std::vector<double> g(N() + 1, 0.0);
  for (int n = 1; n <= N(); ++n) g[n] = gamma(n);
  return g;
}

double BirkhoffCoords::h_half_norm2() const {
  double s = 0.0;
  for (int n = 1; n <= N(); ++n) s += n * gamma(n);
  return 2.0 * s;
}

BirkhoffCoords BirkhoffCoords::trimmed(double floor) const {
  BirkhoffCoords r = *this;
  while (!r.zeta.empty() && std::abs(r.zeta.back()) <= floor) r.zeta.pop_back();
  return r;
}

BirkhoffCoords BirkhoffCoords::rotated(double tau) const {
  BirkhoffCoords r = *this;
  for (int n = 1; n <= N(); ++n) r.zeta[n - 1] *= std::polar(1.0, n * tau);
  return r;
}

double h_half_distance(const BirkhoffCoords& a, const BirkhoffCoords& b) {
  const int N = std::max(a.N(), b.N());
  double s = 0.0;
  for (int n = 1; n <= N; ++n) s += n * std::norm(a.at(n) - b.at(n));
  return std::sqrt(2.0 * s);
}

namespace {

double checked_diff(double a, double b, int p, int n) {
  const double d = a - b;
  if (std::abs(d) < 1e-14)
    throw InvalidSpectrum("coincident eigenvalues lambda_" + std::to_string(p) + " and lambda_" +
                          std::to_string(n));
  return d;
}

}  // namespace

KappaWeights kappa_weights(const std::vector<double>& lambdas, const std::vector<double>& gammas,
                           int n_max, double norm2) {
  const int P = static_cast<int>(lambdas.size()) - 1;
  if (P < 0 || static_cast<int>(gammas.size()) < P + 1)
    throw InputError("kappa_weights needs lambda_0..lambda_P and gamma_1..gamma_P");
  if (n_max > P) throw InputError("kappa_weights: n_max exceeds the available spectrum");

  KappaWeights w;
  w.kappa.assign(n_max + 1, 0.0);
  w.mu.assign(n_max + 1, 1.0);
  for (int n = 0; n <= n_max; ++n) {
    double prod = n == 0 ? 1.0 : 1.0 / checked_diff(lambdas[n], lambdas[0], n, 0);
    for (int p = 1; p <= P; ++p) {
      if (p == n || gammas[p] == 0.0) continue;
      prod *= 1.0 - gammas[p] / checked_diff(lambdas[p], lambdas[n], p, n);
    }
    if (!(prod > 0.0)) throw InvalidSpectrum("kappa_" + std::to_string(n) + " is not positive");
    w.kappa[n] = prod;
  }
  for (int m = 1; m <= n_max; ++m) {
    // mu_m with m = n + 1: the denominators use lambda_n + 1 = lambda_{m-1} + 1.
    double prod = 1.0 - gammas[m] / checked_diff(lambdas[m], lambdas[0], m, 0);
    for (int p = 1; p <= P; ++p) {
      if (p == m || gammas[p] == 0.0) continue;
      prod *= (1.0 - gammas[p] / checked_diff(lambdas[p], lambdas[m], p, m)) /
              (1.0 - gammas[p] / (lambdas[p] - lambdas[m - 1] - 1.0));
    }
    if (!(prod > 0.0)) throw InvalidSpectrum("mu_" + std::to_string(m) + " is not positive");
    w.mu[m] = prod;
  }
  if (!std::isnan(norm2)) {
    // 2 sum_{p>P} p gamma_p = ||u||^2 - 2 sum_{p<=P} p gamma_p, and p >= P + 1.
    double s = 0.0;
    for (int p = 1; p <= P; ++p) s += p * gammas[p];
    w.tail_bound = std::max(0.0, norm2 - 2.0 * s) / (2.0 * (P + 1));
  }
  return w;
}

BirkhoffCoords forward_from_spectrum(const LaxSpectrum& spec, int n_max, double norm2) {
  const int P = std::max(spec.n_trusted, n_max);
  if (P > spec.M) throw InputError("forward map: n_max exceeds the truncation");
  std::vector<double> lambdas(spec.lambdas.begin(), spec.lambdas.begin() + P + 1);
  std::vector<double> gammas(spec.gaps.begin(), spec.gaps.begin() + P + 1);
  const KappaWeights w = kappa_weights(lambdas, gammas, n_max, norm2);
  std::vector<cplx> z(n_max);
  for (int n = 1; n <= n_max; ++n) z[n - 1] = spec.one_fn(n) / std::sqrt(w.kappa[n]);
  return BirkhoffCoords(std::move(z));
}

BirkhoffCoords forward_map(const Potential& u, int n_max, double tol) {
  if (std::abs(u.mean) > 1e-14) throw InputError("forward map requires a mean-zero potential");
  const LaxSpectrum spec = compute_spectrum(u, n_max, tol);
  return forward_from_spectrum(spec, n_max, u.norm2());
}

GeneratingValue generating_function(const Potential& u, const LaxSpectrum& spec, double lambda) {
  for (int n = 0; n <= spec.M; ++n)
    if (std::abs(lambda + spec.lambdas[n]) < kPoleFloor)
      throw PoleProximity("lambda = " + std::to_string(lambda) + " is within " + std::to_string(kPoleFloor) +
                          " of the pole -lambda_" + std::to_string(n));

  Eigen::MatrixXcd A = lax_matrix(u, spec.M);
  A.diagonal().array() += lambda;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(spec.M + 1);
  rhs(0) = 1.0;
  const Eigen::VectorXcd w = A.partialPivLu().solve(rhs);

  double prod = 1.0 / (spec.lambdas[0] + lambda);
  for (int n = 1; n <= spec.n_trusted; ++n) prod *= 1.0 - spec.gaps[n] / (spec.lambdas[n] + lambda);

  GeneratingValue v;
  v.resolvent = w(0).real();
  v.product = prod;
  v.abs_diff = std::abs(v.resolvent - v.product);
  return v;
}

GeneratingValue generating_function(const Potential& u, double lambda, int n_max, double tol) {
  return generating_function(u, compute_spectrum(u, n_max, tol), lambda);
}

TraceResiduals trace_residuals(const Potential& u, const LaxSpectrum& spec) {
  double sum_g = 0.0, sum_ng = 0.0;
  for (int n = 1; n <= spec.n_trusted; ++n) {
    sum_g += spec.gaps[n];
    sum_ng += n * spec.gaps[n];
  }
  TraceResiduals r;
  r.norm = std::abs(u.norm2() - u.mean * u.mean - 2.0 * sum_ng);
  r.mean = std::abs(u.mean + spec.lambdas[0] + sum_g);
  return r;
}

}  // namespace bobk
