#include "bobk/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <complex>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "bobk/errors.hpp"

namespace bobk {

cplx LaxSpectrum::fn_shift(int n) const {
  // <f_{n+1}|S f_n> = sum_k f_{n+1}[k] conj(f_n[k-1]).
  cplx s{};
  for (int k = 1; k <= M; ++k) s += eigvecs(k, n + 1) * std::conj(eigvecs(k - 1, n));
  return s;
}

HardyCoeffs LaxSpectrum::eigenfunction(int n) const {
  std::vector<cplx> a(M + 1);
  for (int k = 0; k <= M; ++k) a[k] = eigvecs(k, n);
  return HardyCoeffs(std::move(a));
}

namespace {

// ||L f - lambda f|| with L the full operator restricted to harmonics <= M+K.
// L is banded with half-width K, so each column costs O((M + K) K).
std::vector<double> untruncated_residuals(const Potential& u, int M, const std::vector<double>& lambdas,
                                          const Eigen::MatrixXcd& vecs) {
  const int K = u.K();
  std::vector<cplx> uh(2 * K + 1);
  for (int d = -K; d <= K; ++d) uh[d + K] = u.hat(d);
  std::vector<double> res(M + 1);
  for (int n = 0; n <= M; ++n) {
    const cplx* f = vecs.col(n).data();
    double s = 0.0;
    for (int row = 0; row <= M + K; ++row) {
      cplx t = row <= M ? (static_cast<double>(row) - lambdas[n]) * f[row] : cplx{};
      for (int m = std::max(0, row - K); m <= std::min(M, row + K); ++m) t -= uh[row - m + K] * f[m];
      s += std::norm(t);
    }
    res[n] = std::sqrt(s);
  }
  return res;
}

// Eigenvalues (ascending) and, if vectors != nullptr, orthonormal eigenvectors
// of a Hermitian matrix, by LAPACK divide and conquer.
std::vector<double> hermitian_eigen(Eigen::MatrixXcd A, Eigen::MatrixXcd* vectors) {
  const int n = static_cast<int>(A.rows());
  std::vector<double> w(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'L', n,
                                         reinterpret_cast<lapack_complex_double*>(A.data()), n, w.data());
  if (info != 0) throw NumericalError("Hermitian eigensolver failed (info " + std::to_string(info) + ")");
  if (vectors) *vectors = std::move(A);
  return w;
}

int trusted_by_residual(const std::vector<double>& res, const std::vector<double>& lambdas, double tol) {
  int n = -1;
  while (n + 1 < static_cast<int>(res.size()) &&
         res[n + 1] <= 10.0 * tol * (1.0 + std::abs(lambdas[n + 1])))
    ++n;
  return n;
}

}  // namespace

LaxSpectrum solve_truncated(const Potential& u, int M, double tol, const SpectrumOptions& opts) {
  LaxSpectrum s;
  s.M = M;
  s.lambdas = hermitian_eigen(lax_matrix(u, M), &s.eigvecs);
  s.gaps.assign(M + 1, 0.0);
  for (int n = 1; n <= M; ++n) {
    const double g = s.lambdas[n] - s.lambdas[n - 1] - 1.0;
    const double clamp = opts.gamma_clamp * (1.0 + std::abs(s.lambdas[n]));
    if (g < -clamp)
      throw InvalidSpectrum("negative gap gamma_" + std::to_string(n) + " = " + std::to_string(g));
    s.gaps[n] = std::max(g, 0.0);
  }
  s.residuals = untruncated_residuals(u, M, s.lambdas, s.eigvecs);
  s.n_trusted = trusted_by_residual(s.residuals, s.lambdas, tol);
  return normalize_phases(std::move(s), opts.phase_floor);
}

std::vector<double> truncated_eigenvalues(const Potential& u, int M) {
  return hermitian_eigen(lax_matrix(u, M), nullptr);
}

LaxSpectrum compute_spectrum(const Potential& u, int n_max, double tol, const SpectrumOptions& opts) {
  if (n_max < 0) throw InputError("n_max must be >= 0");
  if (!(tol > 0)) throw InputError("tol must be positive");
  int M = opts.M0 > 0 ? opts.M0 : std::max({4 * u.K(), 2 * n_max + 16, 1});
  // The coarse level only feeds the doubling test, so it needs no eigenvectors.
  std::vector<double> coarse = truncated_eigenvalues(u, M);
  std::vector<double> before;
  for (int d = 0; d < opts.max_doublings; ++d) {
    LaxSpectrum fine = solve_truncated(u, 2 * M, tol, opts);
    int n = -1;
    while (n + 1 <= std::min(M, fine.n_trusted) && std::abs(coarse[n + 1] - fine.lambdas[n + 1]) < tol) ++n;
    fine.n_trusted = n;
    if (n >= n_max) return fine;
    before = std::move(coarse);
    coarse = std::move(fine.lambdas);
    M *= 2;
  }
  const auto head = [&](const std::vector<double>& v) {
    return std::vector<double>(v.begin(), v.begin() + std::min<size_t>(v.size(), n_max + 1));
  };
  throw ConvergenceFailure("Lax spectrum did not converge to tol " + std::to_string(tol) + " for n <= " +
                               std::to_string(n_max) + " up to M = " + std::to_string(M),
                           head(before), head(coarse));
}

LaxSpectrum normalize_phases(LaxSpectrum s, double phase_floor) {
  const int M = s.M;
  auto rotate = [&](int col, cplx overlap) {
    // Multiply column by conj(overlap)/|overlap| so that overlap becomes real positive.
    const cplx phase = std::conj(overlap) / std::abs(overlap);
    s.eigvecs.col(col) *= phase;
  };
  const cplx c0 = s.one_fn(0);
  if (std::abs(c0) < phase_floor && s.n_trusted >= 0)
    throw PhaseDegeneracy("|<1|f_0>| below phase floor");
  if (std::abs(c0) > 0) rotate(0, c0);
  for (int n = 0; n < M; ++n) {
    const cplx ov = s.fn_shift(n);
    if (std::abs(ov) < phase_floor) {
      if (n + 1 <= s.n_trusted)
        throw PhaseDegeneracy("|<f_" + std::to_string(n + 1) + "|S f_" + std::to_string(n) +
                              ">| below phase floor; increase the truncation");
      if (std::abs(ov) == 0.0) continue;
    }
    rotate(n + 1, ov);
  }
  return s;
}

std::vector<Band> band_report(const LaxSpectrum& s) {
  std::vector<Band> bands;
  for (int n = 0; n <= s.n_trusted; ++n) {
    const double next_gap = n + 1 <= s.M ? s.gaps[n + 1] : 0.0;
    bands.push_back({n, s.lambdas[n], s.lambdas[n] + 1.0, next_gap});
  }
  return bands;
}

}  // namespace bobk
