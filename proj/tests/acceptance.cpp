// Acceptance gate: one PASS/FAIL line per criterion, tolerances fixed below.
// Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bobk/birkhoff.hpp"
#include "bobk/evolution.hpp"
#include "bobk/finite_gap.hpp"
#include "bobk/inverse.hpp"
#include "bobk/spectrum.hpp"
#include "bobk/validation.hpp"
#include "oracles.hpp"

using namespace bobk;
using oracle::cplx;

namespace {

constexpr double kOneGapTol = 1e-9;
constexpr double kTraceTol = 1e-7;
constexpr double kGeneratingTol = 1e-7;
constexpr double kParsevalTol = 1e-7;
constexpr double kRoundTripTol = 1e-7;
constexpr double kGammaGammaTol = 1e-5;
constexpr double kGammaPhiTol = 1e-4;
constexpr double kZetaZetaBarTol = 1e-4;
constexpr double kGradientTol = 1e-6;
constexpr double kFlowTol = 1e-4;
constexpr double kLambdaDriftTol = 1e-6;
constexpr double kFrequencyTol = 1e-3;
constexpr double kTravelTol = 1e-4;
constexpr double kLaxTol = 1e-9;
constexpr double kHamiltonianTol = 1e-7;
constexpr double kSymmetryTol = 1e-8;

constexpr std::uint64_t kSeed = 20240607;

struct Measurement {
  std::string what;
  double value;
  double tol;
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<std::vector<Measurement>()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Measurement> ms;
  std::string error;
  try {
    ms = body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = error.empty();
  std::string detail;
  for (const auto& m : ms) {
    const bool ok = std::isfinite(m.value) && m.value <= m.tol;
    pass = pass && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s %.3e <= %.0e", detail.empty() ? "" : "; ", m.what.c_str(), m.value, m.tol);
    detail += buf;
  }
  if (!error.empty()) detail += "exception: " + error;
  if (!pass) ++failures;
  std::printf("%s [%2d] %s: %s (%.1fs)\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str(), secs);
  std::fflush(stdout);
}

// 20 mean-zero potentials, K in 1..8, norm in [0.2, 2].
std::vector<Potential> corpus() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> pickK(1, 8);
  std::uniform_real_distribution<double> pickNorm(0.2, 2.0);
  std::vector<Potential> us;
  for (int i = 0; i < 20; ++i) {
    const int K = pickK(rng);
    us.push_back(oracle::random_potential(rng, K, pickNorm(rng)));
  }
  return us;
}

struct CorpusEntry {
  Potential u;
  LaxSpectrum spec;
  BirkhoffCoords z;
};

const std::vector<CorpusEntry>& corpus_spectra() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> out;
    for (const Potential& u : corpus()) {
      LaxSpectrum s = compute_spectrum(u, 40, 1e-12);
      BirkhoffCoords z = forward_from_spectrum(s, s.n_trusted, u.norm2());
      out.push_back({u, std::move(s), std::move(z)});
    }
    return out;
  }();
  return entries;
}

FiniteGapSpec poles(std::mt19937_64& rng, int N, double r_max) {
  return random_finite_gap(rng, N, 0.1, r_max, 0.15);
}

}  // namespace

int main() {
  criterion(1, "one-gap exactness", [] {
    const std::pair<int, cplx> cases[] = {
        {1, 0.5}, {1, std::polar(0.3, std::numbers::pi / 4)}, {2, 0.6}, {3, 0.25}};
    double err = 0.0;
    for (const auto& [N, w] : cases) {
      const double g = N * std::norm(w) / (1.0 - std::norm(w));
      const LaxSpectrum s = compute_spectrum(one_gap_closed_form(N, w).u, N + 4, 1e-12);
      for (int n = 0; n <= N + 4; ++n) err = std::max(err, std::abs(s.lambdas[n] - (n < N ? n - g : n)));
      for (int n = 1; n <= N + 4; ++n) err = std::max(err, std::abs(s.gaps[n] - (n == N ? g : 0.0)));
    }
    return std::vector<Measurement>{{"max |lambda_n, gamma_n - exact|", err, kOneGapTol}};
  });

  criterion(2, "trace formulas", [] {
    double rn = 0.0, rm = 0.0;
    for (const auto& e : corpus_spectra()) {
      // sums over trusted gaps
      double s1 = 0.0, s0 = 0.0;
      for (int n = 1; n <= e.spec.n_trusted; ++n) {
        s1 += n * e.spec.gaps[n];
        s0 += e.spec.gaps[n];
      }
      rn = std::max(rn, std::abs(e.u.norm2() - e.u.mean * e.u.mean - 2.0 * s1));
      rm = std::max(rm, std::abs(e.u.mean + e.spec.lambdas[0] + s0));
    }
    return std::vector<Measurement>{{"||u||^2 - 2 sum n gamma_n", rn, kTraceTol},
                                    {"<u|1> + lambda_0 + sum gamma_n", rm, kTraceTol}};
  });

  criterion(3, "generating function agreement", [] {
    double worst = 0.0;
    for (const auto& e : corpus_spectra()) {
      const double l0 = e.spec.lambdas[0];
      const double shifts[] = {0.05, 0.2, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 40.0, 100.0};
      for (double d : shifts) {
        const GeneratingValue gv = generating_function(e.u, e.spec, -l0 + d);
        worst = std::max(worst, std::abs(gv.resolvent - gv.product) / std::abs(gv.resolvent));
      }
    }
    return std::vector<Measurement>{{"max relative |resolvent - product| over 200 lambda", worst, kGeneratingTol}};
  });

  criterion(4, "Parseval identity", [] {
    double worst = 0.0;
    for (const auto& e : corpus_spectra()) {
      double s = 0.0;
      for (int n = 1; n <= e.z.N(); ++n) s += 2.0 * n * std::norm(e.z.at(n));
      worst = std::max(worst, std::abs(s - e.u.norm2()) / (1.0 + e.u.norm2()));
    }
    return std::vector<Measurement>{{"|2 sum n|zeta_n|^2 - ||u||^2| / (1 + ||u||^2)", worst, kParsevalTol}};
  });

  criterion(5, "finite-gap round trip", [] {
    std::mt19937_64 rng(kSeed + 5);
    double rt = 0.0, dr = 0.0;
    for (int N = 1; N <= 5; ++N)
      for (int rep = 0; rep < 2; ++rep) {
        const FiniteGapSpec spec = poles(rng, N, 0.6);
        const Potential u = from_poles(spec);
        const BirkhoffCoords z = forward_map(u, N + 3).trimmed(1e-10);
        rt = std::max(rt, distance(reconstruct_finite_gap(z, u.K()), u));
        ResolventOptions ro;
        ro.K = 80;
        dr = std::max(dr, distance(reconstruct_resolvent(z, ro), reconstruct_finite_gap(z, 80)));
      }
    return std::vector<Measurement>{{"||inverse(forward(u)) - u||", rt, kRoundTripTol},
                                    {"||resolvent - determinant||", dr, kRoundTripTol}};
  });

  criterion(6, "canonical relations on a 3-gap potential", [] {
    std::mt19937_64 rng(kSeed + 6);
    const Potential u = from_poles(poles(rng, 3, 0.5));
    GradientEngine e(u, 3);
    std::vector<FullCoeffs> gg, gp, gz, gzb;
    for (int n = 1; n <= 3; ++n) {
      gg.push_back(e.gradient({Observable::Gamma, n}));
      gp.push_back(e.gradient({Observable::Phi, n}));
      gz.push_back(e.gradient({Observable::Zeta, n}));
      gzb.push_back(e.gradient({Observable::ZetaBar, n}));
    }
    double a = 0.0, b = 0.0, c = 0.0;
    for (int p = 0; p < 3; ++p)
      for (int n = 0; n < 3; ++n) {
        const double d = p == n ? 1.0 : 0.0;
        a = std::max(a, std::abs(gardner_bracket(gg[p], gg[n])));
        b = std::max(b, std::abs(gardner_bracket(gg[p], gp[n]) - d));
        c = std::max(c, std::abs(gardner_bracket(gz[p], gzb[n]) + cplx(0.0, d)));
      }
    return std::vector<Measurement>{{"|{gamma_p, gamma_n}|", a, kGammaGammaTol},
                                    {"|{gamma_p, phi_n} - delta|", b, kGammaPhiTol},
                                    {"|{zeta_n, conj zeta_k} + i delta|", c, kZetaZetaBarTol}};
  });

  criterion(7, "gradient oracles", [] {
    std::mt19937_64 rng(kSeed + 7);
    const Potential u = from_poles(poles(rng, 2, 0.6));
    double l = 0.0, g = 0.0, z = 0.0;
    for (const auto& r : gradient_checks(u, 3, 1e-4)) {
      l = std::max(l, r.lambda_rel);
      g = std::max(g, r.gamma_rel);
    }
    for (const auto& r : gradient_checks(Potential{}, 3, 1e-4))
      if (r.zeta_origin) z = std::max(z, *r.zeta_origin);
    return std::vector<Measurement>{{"grad lambda_n rel", l, kGradientTol},
                                    {"grad gamma_n rel", g, kGradientTol},
                                    {"grad zeta_n(0) rel", z, kGradientTol}};
  });

  criterion(8, "dynamics cross-check", [] {
    std::mt19937_64 rng(kSeed + 8);
    const FiniteGapSpec spec = poles(rng, 2, 0.5);
    const Potential u0 = from_poles(spec);
    const double T = 1.0;
    const int checkpoints = 20;
    const BirkhoffCoords z0 = forward_map(u0, 8).trimmed(1e-12);

    DirectConfig cfg;
    cfg.snapshots = checkpoints;
    const EvolutionTrace tr = evolve_direct(u0, T, cfg);
    const Potential quad = reconstruct_finite_gap(evolve_quadrature(z0, T), u0.K());
    const double l2 = distance(tr.states.back(), quad);

    double drift = 0.0, freq = 0.0;
    std::vector<double> lam0;
    std::vector<cplx> prev(z0.N() + 1), phase(z0.N() + 1);
    for (size_t c = 0; c < tr.states.size(); ++c) {
      const Potential v = tr.states[c].trimmed(1e-15);
      SpectrumOptions so;
      so.M0 = v.K() + 32;
      const LaxSpectrum s = compute_spectrum(v, 8, 1e-11, so);
      if (c == 0) lam0.assign(s.lambdas.begin(), s.lambdas.begin() + 9);
      for (int n = 0; n <= 8; ++n) drift = std::max(drift, std::abs(s.lambdas[n] - lam0[n]));
      const BirkhoffCoords z = forward_from_spectrum(s, z0.N());
      for (int n = 1; n <= z0.N(); ++n) {
        if (c > 0) phase[n] += std::arg(z.at(n) * std::conj(prev[n]));
        prev[n] = z.at(n);
      }
    }
    // omega_n = n^2 - 2 sum_k min(k, n) gamma_k, evaluated here directly
    for (int n = 1; n <= z0.N(); ++n) {
      if (z0.gamma(n) < 1e-12) continue;
      double w = n * n;
      for (int k = 1; k <= z0.N(); ++k) w -= 2.0 * std::min(k, n) * z0.gamma(k);
      freq = std::max(freq, std::abs(phase[n].real() / T - w) / std::abs(w));
    }
    return std::vector<Measurement>{{"||direct - quadrature||", l2, kFlowTol},
                                    {"lambda_n drift (n <= 8)", drift, kLambdaDriftTol},
                                    {"frequency rel error", freq, kFrequencyTol}};
  });

  criterion(9, "traveling wave", [] {
    const Potential u0 = one_gap_closed_form(1, 0.5).u;
    const double T = 1.0;
    const EvolutionTrace tr = evolve_direct(u0, T);
    return std::vector<Measurement>{
        {"||u(T) - u_0(. + T/3)||", distance(tr.states.back(), u0.translated(T / 3.0)), kTravelTol}};
  });

  criterion(10, "Lax pair residual", [] {
    Potential u;
    u.coeffs = {1.0};
    return std::vector<Measurement>{{"interior operator norm, u = 2 cos x, M = 64", lax_residual(u, 64), kLaxTol}};
  });

  criterion(11, "Hamiltonian consistency", [] {
    double worst = 0.0;
    for (const auto& e : corpus_spectra()) {
      // direct value: sum k |c_k|^2 - (1/2pi) int u^3 / 3, cubic term on an exact grid
      const int G = 64;
      double cubic = 0.0;
      for (int j = 0; j < G; ++j) cubic += std::pow(oracle::eval(e.u, 2 * oracle::pi * j / G), 3);
      cubic /= G;
      double quad = 0.0;
      for (int k = 1; k <= e.u.K(); ++k) quad += k * std::norm(e.u.coeffs[k - 1]);
      worst = std::max(worst, std::abs(hamiltonian_actions(e.z.gammas()) - (quad - cubic / 3.0)));
    }
    return std::vector<Measurement>{{"|H(gamma) - H(u)|", worst, kHamiltonianTol}};
  });

  criterion(12, "symmetry suite", [] {
    std::mt19937_64 rng(kSeed + 12);
    double even = 0.0, periodic = 0.0, trans = 0.0;
    const int n = 9;
    for (int t = 0; t < 3; ++t) {
      const Potential u = oracle::random_potential(rng, 3 + t, 1.0 + 0.3 * t);
      const Potential ue = 0.5 * (u + u.reflected());
      for (int m = 1; m <= n; ++m) even = std::max(even, std::abs(forward_map(ue, n).at(m).imag()));
      for (int P : {2, 3}) {
        const BirkhoffCoords z = forward_map(u.dilated(P), n);
        for (int m = 1; m <= n; ++m)
          if (m % P != 0) periodic = std::max(periodic, std::abs(z.at(m)));
      }
      const double tau = 0.7;
      const BirkhoffCoords a = forward_map(u, n), b = forward_map(u.translated(tau), n);
      for (int m = 1; m <= n; ++m) trans = std::max(trans, std::abs(b.at(m) - std::polar(1.0, m * tau) * a.at(m)));
    }
    return std::vector<Measurement>{{"even => max |Im zeta_n|", even, kSymmetryTol},
                                    {"P-periodic => max |zeta_n|, P does not divide n", periodic, kSymmetryTol},
                                    {"translation => |zeta_n(u(.+tau)) - e^{in tau} zeta_n(u)|", trans, kSymmetryTol}};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
