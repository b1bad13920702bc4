#pragma once

// Spectrum of the Lax operator L_u = D - T_u on the Hardy space.

#include <vector>

#include <Eigen/Dense>

#include "bobk/fourier.hpp"

namespace bobk {

struct SpectrumOptions {
  // Initial truncation; 0 selects max(4K, 2 n_max + 16).
  int M0 = 0;
  int max_doublings = 6;
  // Gaps in [-tol_gamma, 0) are clamped, with tol_gamma = 1e-12 (1 + |lambda_n|).
  double gamma_clamp = 1e-12;
  double phase_floor = 1e-8;
};

// Eigen-decomposition of the truncated Lax matrix.
//
// Vectors indexed by n hold the n-th quantity directly: lambdas[n] = lambda_n,
// gaps[n] = gamma_n (gaps[0] is unused and zero), residuals[n] for f_n.
// Column n of eigvecs is f_n in the basis e^{ikx}, k = 0..M, phase-normalized
// so that <1|f_0> > 0 and <f_{n+1}|S f_n> > 0.
struct LaxSpectrum {
  int M = 0;
  std::vector<double> lambdas;
  std::vector<double> gaps;
  Eigen::MatrixXcd eigvecs;
  // Highest index n such that every eigenpair 0..n passed both the doubling
  // and the residual test.
  int n_trusted = -1;
  std::vector<double> residuals;

  // <1|f_n> = conj of the constant coefficient of f_n.
  cplx one_fn(int n) const { return std::conj(eigvecs(0, n)); }
  // <f_{n+1}|S f_n>.
  cplx fn_shift(int n) const;
  HardyCoeffs eigenfunction(int n) const;
};

// Dense eigensolve of lax_matrix(u, M) with phases normalized. Residuals are
// measured against the untruncated operator, so eigenpairs polluted by the
// truncation edge show large residuals. n_trusted is set from the residual
// test alone, using tol.
LaxSpectrum solve_truncated(const Potential& u, int M, double tol = 1e-10,
                            const SpectrumOptions& opts = {});

// Eigenvalues of lax_matrix(u, M) only, ascending.
std::vector<double> truncated_eigenvalues(const Potential& u, int M);

// Doubles the truncation until |lambda_n(M) - lambda_n(2M)| < tol for every
// n <= n_max; returns the spectrum at the finer truncation.
// Throws ConvergenceFailure after opts.max_doublings.
LaxSpectrum compute_spectrum(const Potential& u, int n_max, double tol = 1e-10,
                             const SpectrumOptions& opts = {});

// Rotates eigenvector columns into the normalization <1|f_0> > 0,
// <f_{n+1}|S f_n> > 0. Throws PhaseDegeneracy when a normalizing inner product
// within the trusted range falls below phase_floor.
LaxSpectrum normalize_phases(LaxSpectrum spec, double phase_floor = 1e-8);

struct Band {
  int n;
  double lo;         // lambda_n
  double hi;         // lambda_n + 1
  double gap_after;  // gamma_{n+1}
};

// Bands [lambda_n, lambda_n + 1] for n <= n_trusted.
std::vector<Band> band_report(const LaxSpectrum& spec);

}  // namespace bobk
