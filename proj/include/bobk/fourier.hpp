#pragma once

// Periodic functions on [0, 2pi), the Hardy-space calculus and the
// truncated Lax matrix.
//
// Conventions: u^(k) = (1/2pi) int u e^{-ikx} dx and
// <f|g> = (1/2pi) int f conj(g) dx, so ||e^{ikx}|| = 1.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace bobk {

using cplx = std::complex<double>;

// Real function u(x) = mean + sum_{k=1..K} (c_k e^{ikx} + conj(c_k) e^{-ikx}).
// Only k >= 1 is stored, so realness holds by construction.
struct Potential {
  double mean = 0.0;
  std::vector<cplx> coeffs;  // coeffs[k-1] = u^(k)

  Potential() = default;
  Potential(double mean_, std::vector<cplx> coeffs_)
      : mean(mean_), coeffs(std::move(coeffs_)) {}

  int K() const { return static_cast<int>(coeffs.size()); }

  // u^(k) for any integer k, zero outside [-K, K].
  cplx hat(int k) const;

  // ||u||^2 = mean^2 + 2 sum |c_k|^2.
  double norm2() const;

  double eval(double x) const;

  // u(. + tau): c_k -> c_k e^{ik tau}.
  Potential translated(double tau) const;
  // u(-x): c_k -> conj(c_k).
  Potential reflected() const;
  // u(P x): harmonic k moves to P k.
  Potential dilated(int P) const;

  // Drop trailing coefficients with |c_k| <= floor.
  Potential trimmed(double floor = 0.0) const;
};

Potential operator+(const Potential& a, const Potential& b);
Potential operator-(const Potential& a, const Potential& b);
Potential operator*(double s, const Potential& a);

// L^2 distance, exact on coefficients.
double distance(const Potential& a, const Potential& b);

// Two-sided coefficient sequence c_{-K}..c_K of a (possibly complex) function.
struct FullCoeffs {
  int K = 0;
  std::vector<cplx> c;  // c[k + K]

  explicit FullCoeffs(int K_ = 0) : K(K_), c(2 * K_ + 1) {}
  static FullCoeffs from(const Potential& u);

  cplx at(int k) const { return (k < -K || k > K) ? cplx{} : c[k + K]; }
  cplx& operator[](int k) { return c[k + K]; }
};

// Element of L^2_+ truncated to harmonics 0..M.
struct HardyCoeffs {
  std::vector<cplx> a;  // a[n] = h^(n)

  HardyCoeffs() = default;
  explicit HardyCoeffs(std::vector<cplx> a_) : a(std::move(a_)) {}

  int M() const { return static_cast<int>(a.size()) - 1; }
  double norm2() const;
  // S: multiplication by e^{ix}.
  HardyCoeffs shifted() const;
  // S*: drop a_0 and move every index down by one.
  HardyCoeffs unshifted() const;
};

// <f|g> on L^2_+ (shorter sequence is zero-extended).
cplx inner(const HardyCoeffs& f, const HardyCoeffs& g);

// Equispaced samples x_j = 2 pi j / G.
struct GridFunction {
  std::vector<cplx> values;
  int G() const { return static_cast<int>(values.size()); }
  double x(int j) const;
};

// H u: coefficient k -> -i sign(k) u^(k). H of a real function is real, so
// the result is again a Potential (with zero mean).
Potential hilbert_transform(const Potential& u);

// Szego projector: keep harmonics n >= 0.
HardyCoeffs hardy_project(const FullCoeffs& f);

// Dense (M+1)x(M+1) Toeplitz matrix T_f with entries f^(n-m).
Eigen::MatrixXcd toeplitz_matrix(const FullCoeffs& f, int M);

// Truncated Lax operator, entry (n, m) = n delta_nm - u^(n-m).
Eigen::MatrixXcd lax_matrix(const Potential& u, int M);

// Samples of u on G points; requires G >= 2K + 2.
GridFunction synthesize(const Potential& u, int G);

// Inverse of synthesize for harmonics up to K; requires G >= 2K + 2. The
// samples are projected onto real functions.
Potential analyze(const GridFunction& g, int K);

// Product of two potentials computed on a grid padded to >= 2(2K+1)
// points, so the result is exact for band-limited factors.
Potential multiply(const Potential& a, const Potential& b);

// Smallest power of two >= n.
int next_pow2(int n);

// In-place unnormalized DFTs: forward uses e^{-i...}, backward e^{+i...}.
void fft_forward(std::vector<cplx>& data);
void fft_backward(std::vector<cplx>& data);

}  // namespace bobk
