#pragma once

// Numerical verification: gradients against finite differences, Gardner
// brackets between spectral functionals, symmetry checks and the validation
// suites behind `bobk validate`.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bobk/birkhoff.hpp"
#include "bobk/finite_gap.hpp"
#include "bobk/fourier.hpp"
#include "bobk/spectrum.hpp"

namespace bobk {

struct Check {
  std::string label;
  std::string anchor;  // the identity being tested, as a formula
  double residual;
  double tol;
  bool pass;
};

struct ValidationReport {
  std::string suite;
  std::vector<Check> checks;
  int M = 0;
  int G = 0;
  std::uint64_t seed = 0;

  void add(std::string label, std::string anchor, double residual, double tol);
  void merge(const ValidationReport& other);
  bool passed() const;
  // Checks ordered by label.
  std::vector<Check> sorted() const;
};

enum class Observable { Lambda, Gamma, Zeta, ZetaBar, Phi, OneFn };

// A scalar spectral functional F(u), e.g. {Observable::Gamma, 2} for gamma_2.
struct Functional {
  Observable kind;
  int n;
};

std::string to_string(const Functional& f);

struct GradientOptions {
  int K_test = 0;   // directions cos kx, sin kx for k <= K_test; 0: effective bandwidth + 8, at least 24
  double h = 1e-4;  // finite-difference step
  int M = 0;        // fixed truncation for all perturbed spectra; 0: from compute_spectrum
  double tol = 1e-10;
};

// L^2 gradients of spectral functionals at a fixed potential, represented by
// their two-sided Fourier coefficients g^(k), |k| <= K_test. The gradient is
// the function g with dF[v] = (1/2pi) int g v dx for real v.
//
// lambda_n and gamma_n use the closed forms -|f_n|^2 and |f_{n-1}|^2 - |f_n|^2.
// zeta_n, conj zeta_n, phi_n = arg zeta_n and <1|f_n> use central differences
// along cos kx and sin kx; one sweep of perturbed spectra serves every index.
class GradientEngine {
 public:
  GradientEngine(Potential u, int n_obs, GradientOptions opts = {});

  FullCoeffs gradient(const Functional& f);
  // Central-difference gradient for any observable (including lambda, gamma).
  FullCoeffs fd_gradient(const Functional& f);
  // dF[v] along 2 cos kx (sine = false) or -2 sin kx (sine = true).
  cplx fd_directional(const Functional& f, int k, bool sine);

  const LaxSpectrum& spectrum() const { return base_; }
  int K_test() const { return K_test_; }
  int M() const { return base_.M; }
  // Value of the observable at the base point.
  cplx value(const Functional& f) const;

 private:
  struct Sample {
    std::vector<double> lambdas;  // 0..n_obs
    std::vector<cplx> zeta;       // index n, 1..n_obs
    std::vector<cplx> one_fn;     // 0..n_obs
  };
  Sample sample(const Potential& v) const;
  void ensure_sweep();
  cplx observe(const Sample& s, const Functional& f) const;

  Potential u_;
  int n_obs_;
  GradientOptions opts_;
  int K_test_;
  int P_;
  LaxSpectrum base_;
  Sample base_sample_;
  // sweep_[0]: constant direction; sweep_[2k - 1 + sine] for cos kx / sin kx.
  // Each entry holds the samples at u + h v and u - h v.
  std::vector<std::pair<Sample, Sample>> sweep_;
};

// Fourier coefficients of |f|^2 for f in L^2_+.
FullCoeffs abs_square(const HardyCoeffs& f, int K_out);

// {F, G} = (1/2pi) int (d_x grad F) grad G dx = sum_k ik g_F^(k) g_G^(-k).
cplx gardner_bracket(const FullCoeffs& gF, const FullCoeffs& gG);

// Bracket of two functionals at u. Throws UndefinedAngle for phi_n with
// gamma_n(u) < kAngleFloor.
cplx poisson_bracket(const Functional& F, const Functional& G, const Potential& u,
                     const GradientOptions& opts = {});

struct GradientCheckResult {
  double lambda_rel = 0.0;
  double gamma_rel = 0.0;               // n >= 1 only
  std::optional<double> zeta_origin;    // only at u = 0 and n >= 1
};

// Closed-form gradients of lambda_n and gamma_n against central differences
// (relative to the gradient's L^2 norm); at u = 0 also grad zeta_n(0) = -e^{-inx}/sqrt(n).
// Throws InputError for h outside [1e-7, 1e-2].
GradientCheckResult gradient_check(const Potential& u, int n, double h = 1e-4, int K_test = 0);
// Results for n = 0..n_max from one shared sweep of perturbed spectra.
std::vector<GradientCheckResult> gradient_checks(const Potential& u, int n_max, double h = 1e-4, int K_test = 0);

struct SymmetryOptions {
  double tau = 0.7;
  int n_max = 8;
  int bracket_n = 2;  // {gamma_p, <1|f_n>} checked for p, n <= bracket_n; 0 skips
  double tol = 1e-8;
  double bracket_tol = 1e-4;
};

// Translation covariance, reflection, evenness, 2-periodicity and the
// gamma/<1|f_n> bracket.
ValidationReport symmetry_suite(const Potential& u, const SymmetryOptions& opts = {});

// --- fixtures -------------------------------------------------------------

// Mean-zero potential with K harmonics and norm drawn uniformly in [0.2, norm_max].
Potential random_potential(std::mt19937_64& rng, int K, double norm_max);

// N poles with moduli in [r_min, r_max] and pairwise distance >= min_sep.
FiniteGapSpec random_finite_gap(std::mt19937_64& rng, int N, double r_min = 0.1, double r_max = 0.6,
                                double min_sep = 0.15);

struct SuiteConfig {
  std::uint64_t seed = 7;
  int corpus = 5;                         // random potentials per corpus suite
  std::vector<Potential> extra;           // user fixtures (mean-zero)
};

// Suites: spectrum, trace, roundtrip, symmetry, gradients, brackets, dynamics, all.
// Throws InputError for an unknown name.
ValidationReport run_suite(const std::string& name, const SuiteConfig& cfg);

std::vector<std::string> suite_names();

// --- flow cross-checks ----------------------------------------------------

struct DynamicsCheck {
  double l2_distance;     // ||direct(T) - reconstruct(quadrature(T))||
  double lambda_drift;    // max over checkpoints and n <= n_lambda of |lambda_n(t) - lambda_n(0)|
  double frequency_rel;   // max_n |omega_measured - omega_n| / |omega_n| over open gaps
};

// Evolves a finite-gap datum to time T both ways. Measured frequencies come
// from the unwrapped phase of zeta_n along the direct flow.
DynamicsCheck dynamics_cross_check(const FiniteGapSpec& spec, double T, int n_lambda = 8,
                                   int checkpoints = 20);

// ||u_direct(T) - u_0(. + c T)|| for the one-gap datum with speed c = omega_N / N.
double traveling_wave_error(int N, cplx w, double T);

}  // namespace bobk
