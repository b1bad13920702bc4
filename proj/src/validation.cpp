#include "bobk/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bobk/errors.hpp"
#include "bobk/evolution.hpp"
#include "bobk/inverse.hpp"
#include "bobk/parallel.hpp"

namespace bobk {

namespace {

constexpr cplx I(0.0, 1.0);

bool is_zero(const Potential& u) {
  if (u.mean != 0.0) return false;
  return std::all_of(u.coeffs.begin(), u.coeffs.end(), [](cplx c) { return c == cplx{}; });
}

Potential centered(Potential u) {
  u.mean = 0.0;
  return u;
}

// u + s e^{ikx} + c.c. (k >= 1) or u + s (k = 0, s real).
Potential perturbed(const Potential& u, int k, cplx s) {
  Potential v = u;
  if (k == 0) {
    v.mean += s.real();
    return v;
  }
  if (v.K() < k) v.coeffs.resize(k, cplx{});
  v.coeffs[k - 1] += s;
  return v;
}

}  // namespace

// --- reports --------------------------------------------------------------

void ValidationReport::add(std::string label, std::string anchor, double residual, double tol) {
  const bool pass = std::isfinite(residual) && residual <= tol;
  checks.push_back({std::move(label), std::move(anchor), residual, tol, pass});
}

void ValidationReport::merge(const ValidationReport& other) {
  for (const auto& c : other.checks) checks.push_back(c);
  M = std::max(M, other.M);
  G = std::max(G, other.G);
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<Check> ValidationReport::sorted() const {
  std::vector<Check> out = checks;
  std::stable_sort(out.begin(), out.end(), [](const Check& a, const Check& b) { return a.label < b.label; });
  return out;
}

std::string to_string(const Functional& f) {
  const std::string n = std::to_string(f.n);
  switch (f.kind) {
    case Observable::Lambda: return "lambda_" + n;
    case Observable::Gamma: return "gamma_" + n;
    case Observable::Zeta: return "zeta_" + n;
    case Observable::ZetaBar: return "conj(zeta_" + n + ")";
    case Observable::Phi: return "phi_" + n;
    case Observable::OneFn: return "<1|f_" + n + ">";
  }
  return "?";
}

// --- gradients ------------------------------------------------------------

FullCoeffs abs_square(const HardyCoeffs& f, int K_out) {
  FullCoeffs g(K_out);
  const int M = f.M();
  for (int j = 0; j <= std::min(K_out, M); ++j) {
    cplx s = 0.0;
    for (int m = 0; m + j <= M; ++m) s += f.a[m + j] * std::conj(f.a[m]);
    g[j] = s;
    g[-j] = std::conj(s);
  }
  return g;
}

cplx gardner_bracket(const FullCoeffs& gF, const FullCoeffs& gG) {
  const int K = std::max(gF.K, gG.K);
  cplx s = 0.0;
  for (int k = -K; k <= K; ++k) s += I * static_cast<double>(k) * gF.at(k) * gG.at(-k);
  return s;
}

GradientEngine::GradientEngine(Potential u, int n_obs, GradientOptions opts)
    : u_(std::move(u)), n_obs_(n_obs), opts_(opts) {
  if (n_obs_ < 0) throw InputError("observable index must be >= 0");
  if (!(opts_.h > 0.0)) throw InputError("finite-difference step must be positive");
  // Harmonics below 1e-13 of the largest one carry no gradient information
  // at finite-difference accuracy.
  double cmax = 0.0;
  for (const auto& c : u_.coeffs) cmax = std::max(cmax, std::abs(c));
  const int K_eff = u_.trimmed(1e-13 * cmax).K();
  K_test_ = opts_.K_test > 0 ? opts_.K_test : std::max(K_eff + 8, 24);
  if (opts_.M > 0) {
    base_ = solve_truncated(u_, opts_.M, opts_.tol);
    if (base_.n_trusted < n_obs_)
      throw InvalidTruncation("truncation M = " + std::to_string(opts_.M) + " does not resolve index " +
                              std::to_string(n_obs_));
  } else {
    SpectrumOptions so;
    so.M0 = std::max({K_eff + 2 * n_obs_ + 16, K_test_ + 16});
    base_ = compute_spectrum(u_, n_obs_, opts_.tol, so);
  }
  P_ = std::max(n_obs_, std::min(base_.n_trusted, base_.M - K_test_ - 1));
  base_sample_ = sample(u_);
}

GradientEngine::Sample GradientEngine::sample(const Potential& v) const {
  LaxSpectrum s = solve_truncated(v, base_.M, opts_.tol);
  // Same index range for every perturbed spectrum, so the products in kappa
  // differ only through the perturbation.
  s.n_trusted = P_;
  s = normalize_phases(std::move(s));
  Sample out;
  out.lambdas.assign(s.lambdas.begin(), s.lambdas.begin() + n_obs_ + 1);
  out.one_fn.resize(n_obs_ + 1);
  for (int n = 0; n <= n_obs_; ++n) out.one_fn[n] = s.one_fn(n);
  out.zeta.assign(n_obs_ + 1, cplx{});
  if (n_obs_ >= 1) {
    const BirkhoffCoords z = forward_from_spectrum(s, n_obs_);
    for (int n = 1; n <= n_obs_; ++n) out.zeta[n] = z.at(n);
  }
  return out;
}

void GradientEngine::ensure_sweep() {
  if (!sweep_.empty()) return;
  const int D = 2 * K_test_ + 1;
  std::vector<std::pair<Sample, Sample>> sweep(D);
  const double h = opts_.h;
  parallel_for(D, [&](int d) {
    const int k = (d + 1) / 2;
    const cplx dir = (d == 0) ? cplx(1.0) : (d % 2 == 1 ? cplx(1.0) : I);
    sweep[d] = {sample(perturbed(u_, k, h * dir)), sample(perturbed(u_, k, -h * dir))};
  });
  sweep_ = std::move(sweep);
}

cplx GradientEngine::observe(const Sample& s, const Functional& f) const {
  if (f.n < 0 || f.n > n_obs_) throw InputError("index of " + to_string(f) + " outside the engine range");
  switch (f.kind) {
    case Observable::Lambda: return s.lambdas[f.n];
    case Observable::Gamma:
      if (f.n < 1) throw InputError("gamma_n needs n >= 1");
      return s.lambdas[f.n] - s.lambdas[f.n - 1] - 1.0;
    case Observable::Zeta: return s.zeta.at(f.n);
    case Observable::ZetaBar: return std::conj(s.zeta.at(f.n));
    case Observable::Phi: return std::arg(s.zeta.at(f.n));
    case Observable::OneFn: return s.one_fn[f.n];
  }
  return {};
}

cplx GradientEngine::value(const Functional& f) const { return observe(base_sample_, f); }

cplx GradientEngine::fd_directional(const Functional& f, int k, bool sine) {
  if (k < 0 || k > K_test_) throw InputError("direction outside the test set");
  if ((f.kind == Observable::Phi || f.kind == Observable::Zeta || f.kind == Observable::ZetaBar) && f.n < 1)
    throw InputError("zeta_n needs n >= 1");
  if (f.kind == Observable::Phi && std::norm(base_sample_.zeta[f.n]) < kAngleFloor)
    throw UndefinedAngle("phi_" + std::to_string(f.n) + " undefined: gamma_n below the angle floor");
  ensure_sweep();
  const int d = k == 0 ? 0 : 2 * k - 1 + (sine ? 1 : 0);
  const auto& [plus, minus] = sweep_[d];
  const double h2 = 2.0 * opts_.h;
  if (f.kind == Observable::Phi) return std::arg(plus.zeta[f.n] * std::conj(minus.zeta[f.n])) / h2;
  return (observe(plus, f) - observe(minus, f)) / h2;
}

FullCoeffs GradientEngine::fd_gradient(const Functional& f) {
  FullCoeffs g(K_test_);
  // dF[1] = g^(0); dF[2 cos kx] = A, dF[-2 sin kx] = B give g^(+-k) = (A +- iB) / 2.
  g[0] = fd_directional(f, 0, false);
  for (int k = 1; k <= K_test_; ++k) {
    const cplx A = fd_directional(f, k, false), B = fd_directional(f, k, true);
    g[k] = (A + I * B) / 2.0;
    g[-k] = (A - I * B) / 2.0;
  }
  return g;
}

FullCoeffs GradientEngine::gradient(const Functional& f) {
  if (f.kind == Observable::Lambda) {
    FullCoeffs g = abs_square(base_.eigenfunction(f.n), K_test_);
    for (auto& c : g.c) c = -c;
    return g;
  }
  if (f.kind == Observable::Gamma) {
    if (f.n < 1) throw InputError("gamma_n needs n >= 1");
    const FullCoeffs a = abs_square(base_.eigenfunction(f.n), K_test_);
    const FullCoeffs b = abs_square(base_.eigenfunction(f.n - 1), K_test_);
    FullCoeffs g(K_test_);
    for (size_t i = 0; i < g.c.size(); ++i) g.c[i] = b.c[i] - a.c[i];
    return g;
  }
  return fd_gradient(f);
}

cplx poisson_bracket(const Functional& F, const Functional& G, const Potential& u, const GradientOptions& opts) {
  GradientEngine engine(u, std::max(F.n, G.n), opts);
  return gardner_bracket(engine.gradient(F), engine.gradient(G));
}

namespace {

GradientCheckResult check_index(GradientEngine& engine, const Potential& u, int n) {
  const int Kt = engine.K_test();
  const LaxSpectrum& spec = engine.spectrum();
  auto l2 = [&](int m) {
    const FullCoeffs g = abs_square(spec.eigenfunction(m), spec.M);
    double s = 0.0;
    for (const auto& c : g.c) s += std::norm(c);
    return std::sqrt(s);
  };
  // Largest mismatch of dF[2 cos kx], dF[-2 sin kx] over k = 1..K_test.
  auto mismatch = [&](const Functional& f) {
    const FullCoeffs g = engine.gradient(f);
    double m = 0.0;
    for (int k = 1; k <= Kt; ++k) {
      const cplx dc = g.at(k) + g.at(-k), ds = I * (g.at(-k) - g.at(k));
      m = std::max(m, std::abs(dc - engine.fd_directional(f, k, false)));
      m = std::max(m, std::abs(ds - engine.fd_directional(f, k, true)));
    }
    return m;
  };

  GradientCheckResult r;
  r.lambda_rel = mismatch({Observable::Lambda, n}) / l2(n);
  if (n >= 1) {
    r.gamma_rel = mismatch({Observable::Gamma, n}) / (l2(n) + l2(n - 1));
    if (is_zero(u)) {
      const FullCoeffs g = engine.fd_gradient({Observable::Zeta, n});
      const double scale = 1.0 / std::sqrt(static_cast<double>(n));
      double m = 0.0;
      for (int k = -Kt; k <= Kt; ++k) {
        const cplx exact = (k == -n) ? cplx(-scale) : cplx{};
        m = std::max(m, std::abs(g.at(k) - exact));
      }
      r.zeta_origin = m / scale;
    }
  }
  return r;
}

GradientEngine checked_engine(const Potential& u, int n, double h, int K_test) {
  if (!(h >= 1e-7 && h <= 1e-2)) throw InputError("finite-difference step must lie in [1e-7, 1e-2]");
  if (n < 0) throw InputError("index must be >= 0");
  GradientOptions opts;
  opts.h = h;
  opts.K_test = K_test;
  return GradientEngine(u, n, opts);
}

}  // namespace

GradientCheckResult gradient_check(const Potential& u, int n, double h, int K_test) {
  GradientEngine engine = checked_engine(u, n, h, K_test);
  return check_index(engine, u, n);
}

std::vector<GradientCheckResult> gradient_checks(const Potential& u, int n_max, double h, int K_test) {
  GradientEngine engine = checked_engine(u, n_max, h, K_test);
  std::vector<GradientCheckResult> out;
  for (int n = 0; n <= n_max; ++n) out.push_back(check_index(engine, u, n));
  return out;
}

// --- symmetries -----------------------------------------------------------

ValidationReport symmetry_suite(const Potential& u_in, const SymmetryOptions& opts) {
  ValidationReport rep;
  rep.suite = "symmetry";
  const Potential u = centered(u_in);
  const int n = opts.n_max;

  auto coords = [&](const Potential& v) {
    const LaxSpectrum s = compute_spectrum(v, n, 1e-11);
    rep.M = std::max(rep.M, s.M);
    return std::make_pair(s, forward_from_spectrum(s, n, v.norm2()));
  };
  const auto [s0, z0] = coords(u);

  {
    const auto [s1, z1] = coords(u.translated(opts.tau));
    double dz = 0.0, dl = 0.0;
    for (int m = 1; m <= n; ++m)
      dz = std::max(dz, std::abs(z1.at(m) - std::polar(1.0, m * opts.tau) * z0.at(m)));
    for (int m = 0; m <= n; ++m) dl = std::max(dl, std::abs(s1.lambdas[m] - s0.lambdas[m]));
    rep.add("translation: zeta_n(u(.+tau)) = e^{in tau} zeta_n(u)", "<1|f_n(u(.+tau))> = e^{in tau} <1|f_n(u)>",
            dz, opts.tol);
    rep.add("translation: lambda_n invariant", "spec L_{u(.+tau)} = spec L_u", dl, opts.tol);
  }
  {
    const auto [s1, z1] = coords(u.reflected());
    double d = 0.0;
    for (int m = 1; m <= n; ++m) d = std::max(d, std::abs(z1.at(m) - std::conj(z0.at(m))));
    rep.add("reflection: zeta_n(u(-x)) = conj zeta_n(u)", "zeta_n(u_*) = conj zeta_n(u)", d, opts.tol);
  }
  {
    const Potential ue = 0.5 * (u + u.reflected());
    const auto [s1, z1] = coords(ue);
    double d = 0.0;
    for (int m = 1; m <= n; ++m) d = std::max(d, std::abs(z1.at(m).imag()));
    rep.add("even potential: Im zeta_n = 0", "u(-x) = u(x) => zeta_n real", d, opts.tol);
  }
  {
    const Potential u2 = u.dilated(2);
    const auto [s1, z1] = coords(u2);
    double dz = 0.0, dl = 0.0;
    for (int m = 1; m <= n; m += 2) dz = std::max(dz, std::abs(z1.at(m)));
    for (int m = 0; 2 * m + 1 <= n; ++m) dl = std::max(dl, std::abs(s1.lambdas[2 * m + 1] - s1.lambdas[2 * m] - 1.0));
    rep.add("pi-periodic potential: zeta_odd = 0", "u(x + pi) = u(x) => zeta_{2m+1} = 0", dz, opts.tol);
    rep.add("pi-periodic potential: lambda_{2m+1} = lambda_{2m} + 1", "lambda_{nK+k} = lambda_{nK} + k", dl,
            opts.tol);
  }
  if (opts.bracket_n >= 1) {
    GradientEngine engine(u, opts.bracket_n);
    double d = 0.0;
    std::vector<FullCoeffs> gg, gf;
    for (int m = 0; m <= opts.bracket_n; ++m) {
      if (m >= 1) gg.push_back(engine.gradient({Observable::Gamma, m}));
      gf.push_back(engine.gradient({Observable::OneFn, m}));
    }
    for (int p = 1; p <= opts.bracket_n; ++p)
      for (int m = 0; m <= opts.bracket_n; ++m) {
        const cplx expect = (p == m) ? I * engine.value({Observable::OneFn, m}) : cplx{};
        d = std::max(d, std::abs(gardner_bracket(gg[p - 1], gf[m]) - expect));
      }
    rep.add("bracket {gamma_p, <1|f_n>} = i <1|f_n> delta_pn", "{gamma_p, <1|f_n>} = i <1|f_n> delta_pn", d,
            opts.bracket_tol);
  }
  return rep;
}

// --- fixtures -------------------------------------------------------------

Potential random_potential(std::mt19937_64& rng, int K, double norm_max) {
  if (K < 1) throw InputError("random potential needs K >= 1");
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> r(0.2, std::max(0.2, norm_max));
  Potential u;
  u.coeffs.resize(K);
  for (auto& c : u.coeffs) c = cplx(g(rng), g(rng));
  const double target = r(rng);
  return (target / std::sqrt(u.norm2())) * u;
}

FiniteGapSpec random_finite_gap(std::mt19937_64& rng, int N, double r_min, double r_max, double min_sep) {
  if (N < 1) throw InputError("finite-gap fixture needs N >= 1");
  std::uniform_real_distribution<double> rad(r_min, r_max), ang(0.0, 2.0 * std::numbers::pi);
  FiniteGapSpec spec;
  for (int attempt = 0; static_cast<int>(spec.poles.size()) < N; ++attempt) {
    if (attempt > 100000) throw InputError("cannot place poles with the requested separation");
    const cplx q = std::polar(rad(rng), ang(rng));
    const bool ok = std::all_of(spec.poles.begin(), spec.poles.end(),
                                [&](cplx p) { return std::abs(p - q) >= min_sep; });
    if (ok) spec.poles.push_back(q);
  }
  return spec;
}

// --- flow cross-checks ----------------------------------------------------

DynamicsCheck dynamics_cross_check(const FiniteGapSpec& spec, double T, int n_lambda, int checkpoints) {
  const Potential u0 = from_poles(spec);
  const int N = static_cast<int>(spec.poles.size());
  const int n_max = std::max(n_lambda, N + 2);
  const BirkhoffCoords z0 = forward_map(u0, n_max).trimmed(1e-12);

  DirectConfig cfg;
  cfg.snapshots = checkpoints;
  const EvolutionTrace trace = evolve_direct(u0, T, cfg);

  const int C = static_cast<int>(trace.states.size());
  std::vector<LaxSpectrum> spectra(C);
  parallel_for(C, [&](int c) {
    const Potential& s = trace.states[c];
    const Potential v = s.trimmed(1e-15 * std::max(1.0, std::sqrt(s.norm2())));
    SpectrumOptions so;
    so.M0 = v.K() + 2 * n_max + 16;
    spectra[c] = compute_spectrum(v, n_max, 1e-11, so);
  });

  DynamicsCheck out{};
  const Potential quad = reconstruct_finite_gap(evolve_quadrature(z0, T), u0.K());
  out.l2_distance = distance(trace.states.back(), quad);

  for (int c = 0; c < C; ++c)
    for (int n = 0; n <= n_lambda; ++n)
      out.lambda_drift = std::max(out.lambda_drift, std::abs(spectra[c].lambdas[n] - spectra[0].lambdas[n]));

  const FrequencyVector omega = frequencies(z0.gammas(), z0.N());
  std::vector<BirkhoffCoords> zs(C);
  for (int c = 0; c < C; ++c) zs[c] = forward_from_spectrum(spectra[c], z0.N());
  for (int n = 1; n <= z0.N(); ++n) {
    if (z0.gamma(n) < kAngleFloor) continue;
    double phase = 0.0;
    for (int c = 1; c < C; ++c) phase += std::arg(zs[c].at(n) * std::conj(zs[c - 1].at(n)));
    const double measured = phase / T;
    out.frequency_rel = std::max(out.frequency_rel, std::abs(measured - omega[n]) / std::abs(omega[n]));
  }
  return out;
}

double traveling_wave_error(int N, cplx w, double T) {
  const OneGap g = one_gap_closed_form(N, w);
  const double c = traveling_wave_speed(N, w);
  const EvolutionTrace trace = evolve_direct(g.u, T);
  return distance(trace.states.back(), g.u.translated(c * T));
}

// --- suites ---------------------------------------------------------------

namespace {

void suite_spectrum(ValidationReport& rep) {
  const std::pair<int, cplx> cases[] = {
      {1, 0.5}, {1, std::polar(0.3, std::numbers::pi / 4)}, {2, 0.6}, {3, 0.25}};
  for (const auto& [N, w] : cases) {
    const OneGap g = one_gap_closed_form(N, w);
    const LaxSpectrum s = compute_spectrum(g.u, N + 4, 1e-11);
    rep.M = std::max(rep.M, s.M);
    double d = 0.0;
    for (int n = 0; n <= N + 4; ++n) d = std::max(d, std::abs(s.lambdas[n] - g.lambda(n)));
    for (int n = 1; n <= N + 4; ++n) d = std::max(d, std::abs(s.gaps[n] - (n == N ? g.gamma : 0.0)));
    rep.add("one-gap N=" + std::to_string(N) + " |w|=" + std::to_string(std::abs(w)) + ": lambda_n and gamma_n",
            "gamma_N = N|w|^2/(1-|w|^2), lambda_n = n - gamma_N (n < N), n (n >= N)", d, 1e-9);
  }
}

std::vector<Potential> corpus(const SuiteConfig& cfg, std::uint64_t salt) {
  std::mt19937_64 rng(cfg.seed ^ salt);
  std::uniform_int_distribution<int> pickK(1, 8);
  std::vector<Potential> us = cfg.extra;
  for (int i = 0; i < cfg.corpus; ++i) us.push_back(random_potential(rng, pickK(rng), 2.0));
  return us;
}

void suite_trace(ValidationReport& rep, const SuiteConfig& cfg) {
  double tn = 0, tm = 0, parseval = 0, ham = 0, gen = 0;
  const int n_max = 32;
  for (const Potential& u0 : corpus(cfg, 0x7261636bULL)) {
    const Potential u = centered(u0);
    const LaxSpectrum s = compute_spectrum(u, n_max, 1e-12);
    rep.M = std::max(rep.M, s.M);
    const TraceResiduals tr = trace_residuals(u, s);
    tn = std::max(tn, tr.norm);
    tm = std::max(tm, tr.mean);
    const BirkhoffCoords z = forward_from_spectrum(s, s.n_trusted, u.norm2());
    parseval = std::max(parseval, std::abs(z.h_half_norm2() - u.norm2()) / (1.0 + u.norm2()));
    ham = std::max(ham, std::abs(hamiltonian_actions(z.gammas()) - hamiltonian_direct(u)));
    for (double off : {0.1, 0.3, 0.7, 1.5, 3.0, 6.0, 12.0, 25.0, 50.0, 100.0}) {
      const GeneratingValue gv = generating_function(u, s, -s.lambdas[0] + off);
      gen = std::max(gen, gv.abs_diff / std::abs(gv.resolvent));
    }
  }
  rep.add("trace: ||u||^2 = 2 sum n gamma_n", "||u||^2 - <u|1>^2 = 2 sum n gamma_n", tn, 1e-7);
  rep.add("trace: <u|1> = -lambda_0 - sum gamma_n", "<u|1> = -lambda_0 - sum gamma_n", tm, 1e-7);
  rep.add("Parseval: 2 sum n |zeta_n|^2 = ||u||^2", "2 sum n |zeta_n|^2 = ||u||^2 (relative to 1 + ||u||^2)",
          parseval, 1e-7);
  rep.add("Hamiltonian in actions = direct Hamiltonian",
          "sum n^2 gamma_n - sum_n (sum_{k>=n} gamma_k)^2 = (1/2pi) int (|D|^{1/2}u)^2/2 - u^3/3", ham, 1e-7);
  rep.add("generating function: resolvent = product",
          "<(L+lambda)^{-1}1|1> = (lambda_0+lambda)^{-1} prod (1 - gamma_n/(lambda_n+lambda))", gen, 1e-7);
}

void suite_roundtrip(ValidationReport& rep, const SuiteConfig& cfg) {
  std::mt19937_64 rng(cfg.seed ^ 0x726f756eULL);
  double rt = 0, dr = 0;
  for (int N = 1; N <= 5; ++N) {
    const FiniteGapSpec spec = random_finite_gap(rng, N);
    const Potential u = from_poles(spec);
    const BirkhoffCoords z = forward_map(u, N + 2).trimmed(1e-10);
    const Potential back = reconstruct_finite_gap(z, u.K());
    rt = std::max(rt, distance(back, u));
    ResolventOptions ro;
    ro.K = std::min(u.K(), 100);
    const Potential res = reconstruct_resolvent(z, ro);
    dr = std::max(dr, distance(res, reconstruct_finite_gap(z, ro.K)));
  }
  rep.add("round trip: reconstruct(forward(u)) = u, N <= 5", "Pi u(z) = sum q_j z / (1 - q_j z)", rt, 1e-7);
  rep.add("determinant vs resolvent reconstruction", "Pi u(z) = <(Id - zM)^{-1} X | Y>", dr, 1e-7);
}

void suite_symmetry(ValidationReport& rep, const SuiteConfig& cfg) {
  std::mt19937_64 rng(cfg.seed ^ 0x73796d6dULL);
  std::vector<Potential> us = cfg.extra;
  us.push_back(random_potential(rng, 5, 1.5));
  for (const Potential& u : us) rep.merge(symmetry_suite(u));
}

void suite_gradients(ValidationReport& rep, const SuiteConfig& cfg) {
  double zo = 0, lr = 0, gr = 0;
  for (const auto& r : gradient_checks(Potential{}, 3))
    if (r.zeta_origin) zo = std::max(zo, *r.zeta_origin);
  std::mt19937_64 rng(cfg.seed ^ 0x67726164ULL);
  const Potential u = from_poles(random_finite_gap(rng, 2));
  for (const auto& r : gradient_checks(u, 3)) {
    lr = std::max(lr, r.lambda_rel);
    gr = std::max(gr, r.gamma_rel);
  }
  rep.add("gradient of zeta_n at 0", "grad zeta_n(0) = -e^{-inx}/sqrt(n)", zo, 1e-6);
  rep.add("gradient of lambda_n vs finite differences", "grad lambda_n = -|f_n|^2", lr, 1e-6);
  rep.add("gradient of gamma_n vs finite differences", "grad gamma_n = |f_{n-1}|^2 - |f_n|^2", gr, 1e-6);
}

void suite_brackets(ValidationReport& rep, const SuiteConfig& cfg) {
  std::mt19937_64 rng(cfg.seed ^ 0x62726b74ULL);
  const Potential u = from_poles(random_finite_gap(rng, 3, 0.2, 0.5));
  GradientEngine engine(u, 3);
  rep.M = std::max(rep.M, engine.M());
  std::vector<FullCoeffs> gl, gg, gp, gz, gzb;
  for (int n = 1; n <= 3; ++n) {
    gl.push_back(engine.gradient({Observable::Lambda, n}));
    gg.push_back(engine.gradient({Observable::Gamma, n}));
    gp.push_back(engine.gradient({Observable::Phi, n}));
    gz.push_back(engine.gradient({Observable::Zeta, n}));
    gzb.push_back(engine.gradient({Observable::ZetaBar, n}));
  }
  double ll = 0, gg_ = 0, gp_ = 0, zz = 0, zz0 = 0;
  for (int p = 0; p < 3; ++p)
    for (int n = 0; n < 3; ++n) {
      const double d = p == n ? 1.0 : 0.0;
      ll = std::max(ll, std::abs(gardner_bracket(gl[p], gl[n])));
      gg_ = std::max(gg_, std::abs(gardner_bracket(gg[p], gg[n])));
      gp_ = std::max(gp_, std::abs(gardner_bracket(gg[p], gp[n]) - d));
      zz = std::max(zz, std::abs(gardner_bracket(gz[p], gzb[n]) + I * d));
      zz0 = std::max(zz0, std::abs(gardner_bracket(gz[p], gz[n])));
    }
  rep.add("bracket {lambda_p, lambda_n} = 0", "{lambda_p, lambda_n} = 0", ll, 1e-6);
  rep.add("bracket {gamma_p, gamma_n} = 0", "{gamma_p, gamma_n} = 0", gg_, 1e-5);
  rep.add("bracket {gamma_p, phi_n} = delta_pn", "{gamma_p, phi_n} = delta_pn", gp_, 1e-4);
  rep.add("bracket {zeta_n, conj zeta_k} = -i delta_nk", "{zeta_n, conj zeta_k} = -i delta_nk", zz, 1e-4);
  rep.add("bracket {zeta_n, zeta_k} = 0", "{zeta_n, zeta_k} = 0", zz0, 1e-4);
}

void suite_dynamics(ValidationReport& rep, const SuiteConfig& cfg) {
  Potential c2;
  c2.coeffs = {1.0};
  rep.add("Lax pair residual, u = 2 cos x, M = 64", "dL/dt = [B, L], B = i(T_{|D|u} - T_u^2)", lax_residual(c2, 64),
          1e-9);
  rep.add("one-gap (1, 1/2) travels at speed 1/3", "u(t, x) = u_0(x + c t), c = omega_N / N",
          traveling_wave_error(1, 0.5, 1.0), 1e-4);
  std::mt19937_64 rng(cfg.seed ^ 0x64796e61ULL);
  const DynamicsCheck d = dynamics_cross_check(random_finite_gap(rng, 2, 0.2, 0.5), 1.0);
  rep.add("direct flow vs quadrature flow, T = 1", "zeta_n(t) = zeta_n(0) e^{i omega_n t}", d.l2_distance, 1e-4);
  rep.add("lambda_n conserved along the direct flow", "spec L_{u(t)} = spec L_{u(0)}", d.lambda_drift, 1e-6);
  rep.add("measured frequencies", "omega_n = n^2 - 2 sum min(k, n) gamma_k", d.frequency_rel, 1e-3);
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"spectrum", "trace", "roundtrip", "symmetry", "gradients", "brackets", "dynamics", "all"};
}

ValidationReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  const auto run = [&](const std::string& s, ValidationReport& rep) {
    if (s == "spectrum") suite_spectrum(rep);
    else if (s == "trace") suite_trace(rep, cfg);
    else if (s == "roundtrip") suite_roundtrip(rep, cfg);
    else if (s == "symmetry") suite_symmetry(rep, cfg);
    else if (s == "gradients") suite_gradients(rep, cfg);
    else if (s == "brackets") suite_brackets(rep, cfg);
    else if (s == "dynamics") suite_dynamics(rep, cfg);
    else throw InputError("unknown suite '" + s + "'");
  };
  ValidationReport rep;
  rep.suite = name;
  rep.seed = cfg.seed;
  if (name == "all") {
    std::vector<std::string> names = suite_names();
    names.pop_back();
    std::vector<ValidationReport> parts(names.size());
    parallel_for(static_cast<int>(names.size()), [&](int i) { run(names[i], parts[i]); });
    for (const auto& p : parts) rep.merge(p);
  } else {
    run(name, rep);
  }
  return rep;
}

}  // namespace bobk
