#include "bobk/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "bobk/errors.hpp"
#include "bobk/inverse.hpp"
#include "bobk/spectrum.hpp"

namespace bobk {

FrequencyVector frequencies(const std::vector<double>& gammas, int n_out) {
  const int P = static_cast<int>(gammas.size()) - 1;
  if (n_out <= 0) n_out = std::max(P, 0);
  FrequencyVector f;
  f.omega.assign(n_out + 1, 0.0);
  for (int n = 1; n <= n_out; ++n) {
    double s = 0.0;
    for (int k = 1; k <= P; ++k) s += std::min(k, n) * gammas[k];
    f.omega[n] = static_cast<double>(n) * n - 2.0 * s;
  }
  return f;
}

double hamiltonian_actions(const std::vector<double>& gammas) {
  const int P = static_cast<int>(gammas.size()) - 1;
  double linear = 0.0, squares = 0.0, tail = 0.0;
  for (int n = P; n >= 1; --n) {
    tail += gammas[n];
    linear += static_cast<double>(n) * n * gammas[n];
    squares += tail * tail;
  }
  return linear - squares;
}

double hamiltonian_direct(const Potential& u) {
  double quad = 0.0;
  for (int k = 1; k <= u.K(); ++k) quad += k * std::norm(u.coeffs[k - 1]);
  const int G = next_pow2(3 * u.K() + 2);
  const GridFunction g = synthesize(u, std::max(G, 2 * u.K() + 2));
  double cube = 0.0;
  for (const auto& v : g.values) cube += v.real() * v.real() * v.real();
  return quad - cube / (3.0 * g.G());
}

BirkhoffCoords evolve_quadrature(const BirkhoffCoords& z0, double t) {
  const FrequencyVector w = frequencies(z0.gammas(), z0.N());
  BirkhoffCoords z = z0;
  for (int n = 1; n <= z.N(); ++n) z.zeta[n - 1] *= std::polar(1.0, w[n] * t);
  return z;
}

Potential bo_rhs(const Potential& u) {
  const Potential sq = multiply(u, u);
  Potential r;
  r.coeffs.assign(sq.K(), cplx{});
  const cplx I(0, 1);
  for (int k = 1; k <= sq.K(); ++k) r.coeffs[k - 1] = -I * static_cast<double>(k) * sq.hat(k);
  for (int k = 1; k <= u.K(); ++k) r.coeffs[k - 1] += I * static_cast<double>(k * k) * u.hat(k);
  return r;
}

namespace {

// Modes 0..kmax of a real field plus an alias-free evaluator of -ik (u^2)^(k).
class SpectralState {
 public:
  SpectralState(int kmax, int padded) : kmax_(kmax), P_(padded), buf_(padded) {}

  void nonlinear(const std::vector<cplx>& c, std::vector<cplx>& out) {
    std::fill(buf_.begin(), buf_.end(), cplx{});
    buf_[0] = c[0];
    for (int k = 1; k <= kmax_; ++k) {
      buf_[k] = c[k];
      buf_[P_ - k] = std::conj(c[k]);
    }
    fft_backward(buf_);
    for (auto& v : buf_) v = cplx(v.real() * v.real(), 0.0);
    fft_forward(buf_);
    out[0] = 0.0;
    const cplx I(0, 1);
    for (int k = 1; k <= kmax_; ++k) out[k] = -I * static_cast<double>(k) * buf_[k] / static_cast<double>(P_);
  }

 private:
  int kmax_;
  int P_;
  std::vector<cplx> buf_;
};

double modes_norm2(const std::vector<cplx>& c) {
  double s = c[0].real() * c[0].real();
  for (size_t k = 1; k < c.size(); ++k) s += 2.0 * std::norm(c[k]);
  return s;
}

Potential to_potential(const std::vector<cplx>& c) {
  Potential u;
  u.mean = c[0].real();
  u.coeffs.assign(c.begin() + 1, c.end());
  return u;
}

Diagnostics diagnose(const Potential& u, int spectrum_nmax) {
  Diagnostics d{u.norm2(), u.mean, hamiltonian_direct(u), {}};
  if (spectrum_nmax >= 0) {
    const Potential trimmed = u.trimmed(1e-15 * std::max(1.0, std::sqrt(u.norm2())));
    const LaxSpectrum s = compute_spectrum(trimmed, spectrum_nmax, 1e-11);
    d.lambdas.assign(s.lambdas.begin(), s.lambdas.begin() + spectrum_nmax + 1);
  }
  return d;
}

}  // namespace

double EvolutionTrace::max_norm_drift() const {
  double m = 0.0;
  for (const auto& d : diagnostics) m = std::max(m, std::abs(d.norm2 - diagnostics.front().norm2));
  return m;
}

double EvolutionTrace::max_mean_drift() const {
  double m = 0.0;
  for (const auto& d : diagnostics) m = std::max(m, std::abs(d.mean - diagnostics.front().mean));
  return m;
}

double EvolutionTrace::max_hamiltonian_drift() const {
  double m = 0.0;
  for (const auto& d : diagnostics)
    m = std::max(m, std::abs(d.hamiltonian - diagnostics.front().hamiltonian));
  return m;
}

double EvolutionTrace::max_lambda_drift(int n_max) const {
  double m = 0.0;
  const auto& l0 = diagnostics.front().lambdas;
  for (const auto& d : diagnostics)
    for (int n = 0; n <= n_max && n < static_cast<int>(std::min(d.lambdas.size(), l0.size())); ++n)
      m = std::max(m, std::abs(d.lambdas[n] - l0[n]));
  return m;
}

EvolutionTrace evolve_direct(const Potential& u0, double T, const DirectConfig& cfg_in) {
  if (!(T >= 0.0)) throw InputError("evolution time must be non-negative");
  DirectConfig cfg = cfg_in;
  if (cfg.grid <= 0) cfg.grid = std::max(64, next_pow2(4 * u0.K() + 4));
  if (cfg.grid != next_pow2(cfg.grid)) throw InputError("grid size must be a power of two");
  const int kmax = cfg.grid / 2 - 1;
  if (u0.K() > kmax)
    throw AliasingError("initial datum has " + std::to_string(u0.K()) + " harmonics, grid resolves " +
                        std::to_string(kmax));
  if (cfg.dt <= 0.0) cfg.dt = std::min(1e-3, 0.5 / cfg.grid);
  const int snapshots = std::max(cfg.snapshots, 1);

  std::vector<cplx> c(kmax + 1);
  c[0] = u0.mean;
  for (int k = 1; k <= u0.K(); ++k) c[k] = u0.coeffs[k - 1];

  SpectralState state(kmax, 2 * cfg.grid);
  std::vector<cplx> k1(kmax + 1), k2(kmax + 1), k3(kmax + 1), k4(kmax + 1), tmp(kmax + 1), trial(kmax + 1);
  std::vector<double> symbol(kmax + 1);
  for (int k = 0; k <= kmax; ++k) symbol[k] = static_cast<double>(k) * k;  // i k|k| for k >= 0

  // Lawson RK4 step of size h: c -> e^{Lh} c + integrated nonlinearity.
  auto step = [&](const std::vector<cplx>& in, std::vector<cplx>& out, double h) {
    state.nonlinear(in, k1);
    for (int k = 0; k <= kmax; ++k) tmp[k] = std::polar(1.0, symbol[k] * h / 2) * (in[k] + h / 2 * k1[k]);
    state.nonlinear(tmp, k2);
    for (int k = 0; k <= kmax; ++k) tmp[k] = std::polar(1.0, symbol[k] * h / 2) * in[k] + h / 2 * k2[k];
    state.nonlinear(tmp, k3);
    for (int k = 0; k <= kmax; ++k) tmp[k] = std::polar(1.0, symbol[k] * h) * in[k] + h * std::polar(1.0, symbol[k] * h / 2) * k3[k];
    state.nonlinear(tmp, k4);
    for (int k = 0; k <= kmax; ++k) {
      const cplx e = std::polar(1.0, symbol[k] * h), eh = std::polar(1.0, symbol[k] * h / 2);
      out[k] = e * in[k] + h / 6 * (e * k1[k] + 2.0 * eh * (k2[k] + k3[k]) + k4[k]);
    }
    out[0] = in[0];
  };

  EvolutionTrace trace;
  trace.times.push_back(0.0);
  trace.states.push_back(to_potential(c));
  trace.diagnostics.push_back(diagnose(trace.states.back(), cfg.spectrum_nmax));

  double dt = cfg.dt;
  double t = 0.0;
  for (int s = 1; s <= snapshots; ++s) {
    const double t_end = T * s / snapshots;
    while (t < t_end) {
      const double h = std::min(dt, t_end - t);
      step(c, trial, h);
      const double n_old = modes_norm2(c), n_new = modes_norm2(trial);
      if (n_old > 0.0 && std::abs(n_new - n_old) > cfg.norm_guard * n_old) {
        ++trace.rejected_steps;
        if (trace.rejected_steps > cfg.max_halvings)
          throw AccuracyGuard("per-step drift of ||u||^2 stays above " + std::to_string(cfg.norm_guard) +
                              " at dt = " + std::to_string(dt));
        dt /= 2;
        continue;
      }
      std::swap(c, trial);
      t = (t_end - t <= dt) ? t_end : t + h;
    }
    trace.times.push_back(t_end);
    trace.states.push_back(to_potential(c));
    trace.diagnostics.push_back(diagnose(trace.states.back(), cfg.spectrum_nmax));
  }
  cfg.dt = dt;
  trace.config = cfg;
  return trace;
}

double lax_residual(const Potential& u, int M) {
  const int K = u.K();
  const int interior = M - 2 * K;
  if (M < 1 || interior < 0)
    throw InvalidTruncation("lax_residual needs M >= 2K; got M = " + std::to_string(M) + ", K = " + std::to_string(K));

  const Eigen::MatrixXcd L = lax_matrix(u, M);
  const Eigen::MatrixXcd Tu = toeplitz_matrix(FullCoeffs::from(u), M);
  Potential abs_du;  // |d_x| u
  abs_du.coeffs.resize(K);
  for (int k = 1; k <= K; ++k) abs_du.coeffs[k - 1] = static_cast<double>(k) * u.coeffs[k - 1];
  const Eigen::MatrixXcd B = cplx(0, 1) * (toeplitz_matrix(FullCoeffs::from(abs_du), M) - Tu * Tu);
  const Eigen::MatrixXcd dL = -toeplitz_matrix(FullCoeffs::from(bo_rhs(u)), M);
  const Eigen::MatrixXcd diff = (dL - (B * L - L * B)).topLeftCorner(interior + 1, interior + 1);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(diff);
  return svd.singularValues()(0);
}

std::vector<double> recurrence_probe(const BirkhoffCoords& z0, double T_max, double threshold,
                                     const RecurrenceOptions& opts) {
  std::vector<double> times;
  if (!(threshold > 0.0) || !(T_max > 0.0)) return times;
  const FrequencyVector w = frequencies(z0.gammas(), z0.N());
  std::vector<int> active;
  for (int n = 1; n <= z0.N(); ++n)
    if (z0.gamma(n) >= kAngleFloor && w[n] != 0.0) active.push_back(n);
  if (active.empty()) return times;

  if (active.size() == 1) {
    const double period = 2.0 * std::numbers::pi / std::abs(w[active[0]]);
    for (int k = 1; k * period <= T_max; ++k) times.push_back(k * period);
    return times;
  }

  // d^2(t) = 2 sum n gamma_n |e^{i omega_n t} - 1|^2
  auto dist2 = [&](double t) {
    double s = 0.0;
    for (int n : active) s += 2.0 * n * z0.gamma(n) * 2.0 * (1.0 - std::cos(w[n] * t));
    return s;
  };
  double wmax = 0.0;
  for (int n : active) wmax = std::max(wmax, std::abs(w[n]));
  const double h = opts.scan_step > 0 ? opts.scan_step : 0.1 * 2.0 * std::numbers::pi / wmax;

  const Potential u0 = opts.confirm_l2 ? reconstruct_finite_gap(z0) : Potential{};
  double t_prev = 0.0, d_prev = dist2(0.0), t_cur = h, d_cur = dist2(h);
  while (t_cur < T_max) {
    const double t_next = t_cur + h, d_next = dist2(t_next);
    if (d_cur <= d_prev && d_cur <= d_next) {
      const auto [t_min, d_min] =
          boost::math::tools::brent_find_minima(dist2, t_prev, std::min(t_next, T_max), 50);
      if (t_min > 0.0 && std::sqrt(std::max(d_min, 0.0)) < threshold) {
        bool ok = true;
        if (opts.confirm_l2) ok = distance(reconstruct_finite_gap(evolve_quadrature(z0, t_min)), u0) < threshold;
        if (ok && (times.empty() || t_min - times.back() > h)) times.push_back(t_min);
      }
    }
    t_prev = t_cur;
    d_prev = d_cur;
    t_cur = t_next;
    d_cur = d_next;
  }
  return times;
}

}  // namespace bobk
