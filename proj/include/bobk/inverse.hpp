#pragma once

// Reconstruction of a potential from its Birkhoff coordinates.

#include <vector>

#include <Eigen/Dense>

#include "bobk/birkhoff.hpp"
#include "bobk/fourier.hpp"

namespace bobk {

// Spectral data of the N-gap potential with coordinates zeta_1..zeta_N.
// Index-by-n vectors as in LaxSpectrum (entry 0 of gammas/mus unused).
struct SpectralData {
  int N = 0;
  std::vector<double> lambdas;  // lambda_0..lambda_N; lambda_n = n past N
  std::vector<double> gammas;
  std::vector<double> kappas;
  std::vector<double> mus;
  std::vector<cplx> one_fn;  // <1|f_n>, n = 0..N
  // M_{np} = <f_p|S f_n> for 0 <= n, p <= N, i.e. S* in the eigenbasis. Row N
  // is zero inside this block: its unit entry sits at p = N + 1.
  Eigen::MatrixXcd Mmat;

  // X = -(lambda_p <1|f_p>), Y = (<1|f_n>).
  Eigen::VectorXcd X() const;
  Eigen::VectorXcd Y() const;
};

SpectralData spectral_data_from_zeta(const BirkhoffCoords& z);

inline constexpr double kRootFloor = 1e-9;

// Poles q_j (eigenvalues of the leading N x N block of M); Q(z) = prod (1 - q_j z).
// Throws InconsistentCoordinates if a root 1/q_j of Q lies in |z| <= 1 + kRootFloor.
std::vector<cplx> finite_gap_poles(const BirkhoffCoords& z);

// Pi u(z) = sum q_j z / (1 - q_j z) with q_j from finite_gap_poles. Trailing
// zero coordinates are dropped first; K = 0 picks the truncation automatically.
Potential reconstruct_finite_gap(const BirkhoffCoords& z, int K = 0);

struct ResolventOptions {
  double radius = 0.9;
  int samples = 256;
  int K = 0;  // 0: largest k that the rescaling r^{-k} keeps accurate
};

// Pi u(z) = <(Id - z M)^{-1} X | Y> sampled on |z| = radius, then Fourier
// coefficients recovered by a discrete transform and u^(k) = coeff_k / r^k.
Potential reconstruct_resolvent(const BirkhoffCoords& z, const ResolventOptions& opts = {});

// Pi u at one point |z| < 1.
cplx hardy_part_resolvent(const SpectralData& data, cplx z);

}  // namespace bobk
