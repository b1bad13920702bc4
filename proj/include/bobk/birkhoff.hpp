#pragma once

// Birkhoff coordinates zeta_n = <1|f_n> / sqrt(kappa_n), the generating
// function H_lambda and the trace formulas.

#include <limits>
#include <optional>
#include <vector>

#include "bobk/fourier.hpp"
#include "bobk/spectrum.hpp"

namespace bobk {

inline constexpr double kAngleFloor = 1e-12;

// Finite sequence zeta_1..zeta_N; entries past N are zero.
struct BirkhoffCoords {
  std::vector<cplx> zeta;  // zeta[n-1] = zeta_n

  BirkhoffCoords() = default;
  explicit BirkhoffCoords(std::vector<cplx> z) : zeta(std::move(z)) {}

  int N() const { return static_cast<int>(zeta.size()); }
  // zeta_n for n >= 1, zero past N.
  cplx at(int n) const { return n >= 1 && n <= N() ? zeta[n - 1] : cplx{}; }
  double gamma(int n) const { return std::norm(at(n)); }
  // arg zeta_n, undefined when gamma_n < kAngleFloor.
  std::optional<double> angle(int n) const;
  // gamma_0..gamma_N with gamma_0 = 0 (placeholder).
  std::vector<double> gammas() const;
  // 2 sum n |zeta_n|^2, equal to ||u||^2 for the source potential.
  double h_half_norm2() const;
  // Drop trailing entries with |zeta_n| <= floor.
  BirkhoffCoords trimmed(double floor) const;
  // zeta_n -> zeta_n e^{i n tau}.
  BirkhoffCoords rotated(double tau) const;
};

// sqrt(2 sum n |a_n - b_n|^2), the h^{1/2} distance matching the L^2 norm.
double h_half_distance(const BirkhoffCoords& a, const BirkhoffCoords& b);

struct KappaWeights {
  std::vector<double> kappa;  // kappa_0..kappa_N
  std::vector<double> mu;     // mu[n] = mu_n for 1 <= n <= N; mu[0] unused
  // Estimate of sum_{p > P} gamma_p, the mass the truncated products ignore.
  double tail_bound = 0.0;
};

// Product formulas over p = 1..P with P = lambdas.size() - 1 and gaps past P
// treated as closed. gammas[n] = gamma_n (gammas[0] unused). norm2, when
// known, bounds the ignored tail through 2 sum_{p>P} p gamma_p.
KappaWeights kappa_weights(const std::vector<double>& lambdas, const std::vector<double>& gammas,
                           int n_max, double norm2 = std::numeric_limits<double>::quiet_NaN());

// zeta_1..zeta_{n_max} from a normalized spectrum; products run over its
// trusted range.
BirkhoffCoords forward_from_spectrum(const LaxSpectrum& spec, int n_max, double norm2 = std::numeric_limits<double>::quiet_NaN());

// Requires mean(u) = 0.
BirkhoffCoords forward_map(const Potential& u, int n_max, double tol = 1e-10);

struct GeneratingValue {
  double resolvent;  // <(L_u + lambda)^{-1} 1 | 1> from a linear solve
  double product;    // (1/(lambda_0 + lambda)) prod (1 - gamma_n/(lambda_n + lambda))
  double abs_diff;
};

inline constexpr double kPoleFloor = 1e-6;

// Both representations of H_lambda at real lambda; the resolvent is solved
// at the truncation of spec. Throws PoleProximity within kPoleFloor of -lambda_n.
GeneratingValue generating_function(const Potential& u, const LaxSpectrum& spec, double lambda);
GeneratingValue generating_function(const Potential& u, double lambda, int n_max = 32, double tol = 1e-10);

struct TraceResiduals {
  double norm;  // | ||u||^2 - <u|1>^2 - 2 sum n gamma_n |
  double mean;  // | <u|1> + lambda_0 + sum gamma_n |
};

// Sums run over the trusted gaps of spec.
TraceResiduals trace_residuals(const Potential& u, const LaxSpectrum& spec);

}  // namespace bobk
