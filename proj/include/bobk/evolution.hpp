#pragma once

// Benjamin-Ono flow u_t = H u_xx - (u^2)_x, solved by quadrature in Birkhoff
// coordinates and by a direct pseudo-spectral integrator.

#include <vector>

#include "bobk/birkhoff.hpp"
#include "bobk/fourier.hpp"

namespace bobk {

// omega[n] = omega_n for n >= 1; omega[0] unused.
struct FrequencyVector {
  std::vector<double> omega;
  double operator[](int n) const { return omega[n]; }
  int N() const { return static_cast<int>(omega.size()) - 1; }
};

// omega_n = n^2 - 2 sum_k min(k, n) gamma_k for n = 1..n_out, from gap lengths
// gammas[k] = gamma_k (gammas[0] unused, gaps past the vector are closed).
// n_out = 0 means n_out = gammas.size() - 1.
FrequencyVector frequencies(const std::vector<double>& gammas, int n_out = 0);

// sum n^2 gamma_n - sum_n (sum_{k>=n} gamma_k)^2
double hamiltonian_actions(const std::vector<double>& gammas);

// (1/2pi) int (1/2 (|d_x|^{1/2} u)^2 - u^3 / 3) dx, evaluated exactly for
// band-limited u (quadratic term from coefficients, cubic term on a grid).
double hamiltonian_direct(const Potential& u);

// zeta_n(t) = zeta_n e^{i omega_n t}.
BirkhoffCoords evolve_quadrature(const BirkhoffCoords& z0, double t);

// Right-hand side H u_xx - (u^2)_x as a potential with 2K harmonics.
Potential bo_rhs(const Potential& u);

struct DirectConfig {
  double dt = 0.0;    // 0: min(1e-3, 0.5 / grid)
  int grid = 0;       // physical grid G (power of two); 0: from the data
  int snapshots = 0;  // checkpoints besides t = 0; 0: only the final state
  // Reject a step when the relative change of ||u||^2 over it exceeds this.
  double norm_guard = 1e-8;
  int max_halvings = 12;
  // Eigenvalues lambda_0..lambda_{spectrum_nmax} tracked at every checkpoint
  // (negative disables).
  int spectrum_nmax = -1;
};

struct Diagnostics {
  double norm2;
  double mean;
  double hamiltonian;
  std::vector<double> lambdas;  // empty unless tracked
};

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<Potential> states;
  std::vector<Diagnostics> diagnostics;
  DirectConfig config;  // as resolved (dt, grid filled in)
  int rejected_steps = 0;

  double max_norm_drift() const;
  double max_mean_drift() const;
  double max_hamiltonian_drift() const;
  double max_lambda_drift(int n_max) const;
};

// Integrating-factor RK4 on Fourier modes |k| <= grid/2 - 1 with the exact
// linear propagator e^{i k|k| t}; the quadratic term is evaluated on a grid
// zero-padded to 2 * grid points, which is alias-free.
EvolutionTrace evolve_direct(const Potential& u0, double T, const DirectConfig& cfg = {});

// Operator norm of dL_u/dt - [B_u, L_u] on the block of indices <= M - 2K,
// where dL_u/dt = -T_{u_t} along the flow and B_u = i(T_{|d_x| u} - T_u^2).
double lax_residual(const Potential& u, int M);

struct RecurrenceOptions {
  double scan_step = 0.0;  // 0: a tenth of the fastest angular period
  bool confirm_l2 = true;  // check candidates by reconstructing the potential
};

// Times t in (0, T_max] where the quadrature flow comes back within threshold
// of its start, measured in the h^{1/2} metric and confirmed in L^2.
std::vector<double> recurrence_probe(const BirkhoffCoords& z0, double T_max, double threshold,
                                     const RecurrenceOptions& opts = {});

}  // namespace bobk
