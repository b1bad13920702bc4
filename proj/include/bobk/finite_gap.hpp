#pragma once

// Finite-gap potentials from pole data, and the closed-form one-gap family.

#include <vector>

#include "bobk/fourier.hpp"

namespace bobk {

// Poles q_j in 0 < |q_j| < 1; Q(z) = prod (1 - q_j z).
struct FiniteGapSpec {
  std::vector<cplx> poles;

  // Throws InvalidPole.
  void validate() const;
};

// Smallest K with dropped l^2 tail mass below `mass` for count poles of
// modulus at most r_max.
int auto_harmonics(double r_max, int count, double mass = 1e-30);

// u^(k) = sum_j q_j^k for k = 1..K, mean zero; no validation of the poles.
// K = 0 picks auto_harmonics.
Potential pole_sum_potential(const std::vector<cplx>& poles, int K = 0);

// Validated pole_sum_potential. Coincident poles are allowed.
Potential from_poles(const FiniteGapSpec& spec, int K = 0);

// sum_j (P_{r_j}(x + alpha_j) - 1) with the Poisson kernel
// P_r(t) = (1 - r^2) / (1 - 2 r cos t + r^2), q_j = r_j e^{i alpha_j}.
double poisson_form(const FiniteGapSpec& spec, double x);

// The one-gap family u = N w e^{iNx} / (1 - w e^{iNx}) + c.c.
struct OneGap {
  int N = 1;
  cplx w;
  Potential u;
  double gamma;  // gamma_N = N |w|^2 / (1 - |w|^2)

  double lambda(int n) const { return n < N ? n - gamma : static_cast<double>(n); }
  // f_n on harmonics 0..M, already in the normalized phase convention.
  HardyCoeffs eigenfunction(int n, int M) const;
  // <1|f_N> = -w, zeta_N = -sqrt(N + gamma_N) w.
  cplx zeta() const;
};

// Throws InputError unless N >= 1 and 0 < |w| < 1. K = 0 picks the truncation.
OneGap one_gap_closed_form(int N, cplx w, int K = 0);

// c = omega_N / N; the one-gap solution is u(t, x) = u_0(x + c t).
double traveling_wave_speed(int N, cplx w);

}  // namespace bobk
