#include "bobk/finite_gap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bobk/errors.hpp"
#include "bobk/evolution.hpp"

namespace bobk {

void FiniteGapSpec::validate() const {
  if (poles.empty()) throw InvalidPole("finite-gap spec needs at least one pole");
  for (size_t j = 0; j < poles.size(); ++j) {
    const double r = std::abs(poles[j]);
    if (!(r > 0.0) || !(r < 1.0))
      throw InvalidPole("pole " + std::to_string(j) + " has modulus " + std::to_string(r) +
                        ", need 0 < |q| < 1");
  }
}

int auto_harmonics(double r_max, int count, double mass) {
  constexpr int kMaxHarmonics = 1 << 14;
  if (r_max <= 0.0) return 1;
  if (r_max >= 1.0) return kMaxHarmonics;
  // 2 count^2 sum_{k>K} r^{2k} = 2 count^2 r^{2(K+1)} / (1 - r^2) < mass
  const double c = 2.0 * count * count / (1.0 - r_max * r_max);
  const double K = std::log(mass / c) / (2.0 * std::log(r_max)) - 1.0;
  return std::clamp(static_cast<int>(std::ceil(K)), 1, kMaxHarmonics);
}

Potential pole_sum_potential(const std::vector<cplx>& poles, int K) {
  if (K <= 0) {
    double r = 0.0;
    for (const auto& q : poles) r = std::max(r, std::abs(q));
    K = auto_harmonics(r, static_cast<int>(poles.size()));
  }
  Potential u;
  u.coeffs.assign(K, cplx{});
  for (const auto& q : poles) {
    cplx qk = 1.0;
    for (int k = 1; k <= K; ++k) {
      qk *= q;
      u.coeffs[k - 1] += qk;
    }
  }
  return u;
}

Potential from_poles(const FiniteGapSpec& spec, int K) {
  spec.validate();
  return pole_sum_potential(spec.poles, K);
}

double poisson_form(const FiniteGapSpec& spec, double x) {
  double v = 0.0;
  for (const auto& q : spec.poles) {
    const double r = std::abs(q), a = std::arg(q);
    v += (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(x + a) + r * r) - 1.0;
  }
  return v;
}

OneGap one_gap_closed_form(int N, cplx w, int K) {
  if (N < 1) throw InputError("one-gap index N must be >= 1");
  const double aw = std::abs(w);
  if (!(aw > 0.0) || !(aw < 1.0)) throw InputError("one-gap parameter needs 0 < |w| < 1");

  OneGap g;
  g.N = N;
  g.w = w;
  g.gamma = N * aw * aw / (1.0 - aw * aw);
  // N w z^N / (1 - w z^N) = N sum_{m>=1} w^m z^{Nm}
  if (K <= 0) K = N * auto_harmonics(aw, N);
  g.u.coeffs.assign(K, cplx{});
  cplx wm = 1.0;
  for (int m = 1; N * m <= K; ++m) {
    wm *= w;
    g.u.coeffs[N * m - 1] = static_cast<double>(N) * wm;
  }
  return g;
}

HardyCoeffs OneGap::eigenfunction(int n, int M) const {
  std::vector<cplx> a(M + 1);
  const double s = 1.0 - std::norm(w);
  if (n < N) {
    // e^{inx} sqrt(1 - |w|^2) / (1 - w e^{iNx})
    cplx wm = std::sqrt(s);
    for (int k = n; k <= M; k += N, wm *= w) a[k] = wm;
  } else {
    // e^{i(n-N)x} ((1 - |w|^2) e^{iNx} / (1 - w e^{iNx}) - conj(w))
    if (n - N <= M) a[n - N] = -std::conj(w);
    cplx wm = s;
    for (int k = n; k <= M; k += N, wm *= w) a[k] += wm;
  }
  return HardyCoeffs(std::move(a));
}

cplx OneGap::zeta() const { return -std::sqrt(N + gamma) * w; }

double traveling_wave_speed(int N, cplx w) {
  const OneGap g = one_gap_closed_form(N, w, 1);
  std::vector<double> gammas(N + 1, 0.0);
  gammas[N] = g.gamma;
  return frequencies(gammas, N)[N] / N;
}

}  // namespace bobk
