#include "bobk/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bobk/errors.hpp"
#include "bobk/finite_gap.hpp"

namespace bobk {

Eigen::VectorXcd SpectralData::X() const {
  Eigen::VectorXcd x(N + 1);
  for (int p = 0; p <= N; ++p) x(p) = -lambdas[p] * one_fn[p];
  return x;
}

Eigen::VectorXcd SpectralData::Y() const {
  Eigen::VectorXcd y(N + 1);
  for (int n = 0; n <= N; ++n) y(n) = one_fn[n];
  return y;
}

SpectralData spectral_data_from_zeta(const BirkhoffCoords& z) {
  SpectralData d;
  const int N = z.N();
  d.N = N;
  d.gammas = z.gammas();
  d.lambdas.assign(N + 1, 0.0);
  // lambda_n = n - sum_{k>n} gamma_k for mean-zero potentials.
  double tail = 0.0;
  for (int n = N; n >= 0; --n) {
    d.lambdas[n] = n - tail;
    tail += d.gammas[n];
  }
  const KappaWeights w = kappa_weights(d.lambdas, d.gammas, N);
  d.kappas = w.kappa;
  d.mus = w.mu;

  d.one_fn.assign(N + 1, cplx{});
  d.one_fn[0] = std::sqrt(d.kappas[0]);
  for (int n = 1; n <= N; ++n) d.one_fn[n] = std::sqrt(d.kappas[n]) * z.at(n);

  d.Mmat = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  for (int n = 0; n < N; ++n) {
    if (d.gammas[n + 1] == 0.0) {
      d.Mmat(n, n + 1) = 1.0;
      continue;
    }
    const cplx scale = std::sqrt(d.mus[n + 1]) * d.gammas[n + 1] / std::conj(d.one_fn[n + 1]);
    for (int p = 0; p <= N; ++p) {
      if (p == n + 1) {
        d.Mmat(n, p) = std::sqrt(d.mus[n + 1]);
      } else if (p == 0 || d.gammas[p] != 0.0) {
        d.Mmat(n, p) = scale * std::conj(d.one_fn[p]) / (d.lambdas[p] - d.lambdas[n] - 1.0);
      }
    }
  }
  return d;
}

std::vector<cplx> finite_gap_poles(const BirkhoffCoords& z_in) {
  const BirkhoffCoords z = z_in.trimmed(0.0);
  const int N = z.N();
  if (N == 0) return {};
  const SpectralData d = spectral_data_from_zeta(z);
  const Eigen::MatrixXcd block = d.Mmat.topLeftCorner(N, N);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(block, false);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalues of the shift block failed");
  std::vector<cplx> q(es.eigenvalues().data(), es.eigenvalues().data() + N);
  for (const auto& qj : q) {
    if (std::abs(qj) * (1.0 + kRootFloor) >= 1.0)
      throw InconsistentCoordinates("root of Q at |z| = " + std::to_string(1.0 / std::abs(qj)) +
                                    " inside the closed unit disc");
  }
  return q;
}

Potential reconstruct_finite_gap(const BirkhoffCoords& z, int K) {
  const std::vector<cplx> q = finite_gap_poles(z);
  if (q.empty()) return Potential{};
  return pole_sum_potential(q, K);
}

cplx hardy_part_resolvent(const SpectralData& d, cplx z) {
  if (std::abs(z) >= 1.0) throw InputError("resolvent evaluation requires |z| < 1");
  Eigen::MatrixXcd A = -z * d.Mmat;
  A.diagonal().array() += 1.0;
  const Eigen::VectorXcd xi = A.partialPivLu().solve(d.X());
  // <xi|Y> = sum xi_n conj(Y_n)
  return d.Y().dot(xi);
}

Potential reconstruct_resolvent(const BirkhoffCoords& z_in, const ResolventOptions& opts) {
  constexpr double kMaxRadius = 0.99;
  if (!(opts.radius > 0.0) || opts.radius > kMaxRadius)
    throw ConditioningError("resolvent radius must lie in (0, " + std::to_string(kMaxRadius) +
                            "]; Id - zM degenerates as |z| -> 1");
  if (opts.samples < 8) throw InputError("resolvent reconstruction needs at least 8 samples");
  const BirkhoffCoords z = z_in.trimmed(0.0);
  if (z.N() == 0) return Potential{};
  const SpectralData d = spectral_data_from_zeta(z);

  const int G = opts.samples;
  std::vector<cplx> vals(G);
  for (int j = 0; j < G; ++j)
    vals[j] = hardy_part_resolvent(d, std::polar(opts.radius, 2.0 * std::numbers::pi * j / G));
  fft_forward(vals);

  // Coefficient k is amplified by r^{-k}; stop where that exceeds 1e7.
  int K = opts.K;
  if (K <= 0) {
    K = G / 2 - 1;
    const int k_acc = static_cast<int>(std::log(1e7) / -std::log(opts.radius));
    K = std::max(1, std::min(K, k_acc));
  }
  K = std::min(K, G - 1);
  Potential u;
  u.mean = vals[0].real() / G;
  u.coeffs.resize(K);
  for (int k = 1; k <= K; ++k) u.coeffs[k - 1] = vals[k] / (G * std::pow(opts.radius, k));
  return u;
}

}  // namespace bobk
