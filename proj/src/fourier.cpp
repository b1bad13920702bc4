#include "bobk/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include <fftw3.h>

#include "bobk/errors.hpp"

namespace bobk {

namespace {

// FFTW's planner is not re-entrant; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

PlanPair& plans_for(int n) {
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // Plan against an aligned scratch buffer; execution below checks alignment.
  auto* scratch = fftw_alloc_complex(static_cast<size_t>(n));
  PlanPair p;
  p.forward = fftw_plan_dft_1d(n, scratch, scratch, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.backward = fftw_plan_dft_1d(n, scratch, scratch, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(scratch);
  return cache.emplace(n, p).first->second;
}

void run(std::vector<cplx>& data, bool forward) {
  if (data.empty()) return;
  auto& p = plans_for(static_cast<int>(data.size()));
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(forward ? p.forward : p.backward, ptr, ptr);
}

}  // namespace

void fft_forward(std::vector<cplx>& data) { run(data, true); }
void fft_backward(std::vector<cplx>& data) { run(data, false); }

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

cplx Potential::hat(int k) const {
  if (k == 0) return mean;
  if (k > 0) return k <= K() ? coeffs[k - 1] : cplx{};
  return -k <= K() ? std::conj(coeffs[-k - 1]) : cplx{};
}

double Potential::norm2() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::norm(c);
  return mean * mean + 2.0 * s;
}

double Potential::eval(double x) const {
  double v = mean;
  for (int k = 1; k <= K(); ++k) v += 2.0 * std::real(coeffs[k - 1] * std::polar(1.0, k * x));
  return v;
}

Potential Potential::translated(double tau) const {
  Potential r = *this;
  for (int k = 1; k <= K(); ++k) r.coeffs[k - 1] *= std::polar(1.0, k * tau);
  return r;
}

Potential Potential::reflected() const {
  Potential r = *this;
  for (auto& c : r.coeffs) c = std::conj(c);
  return r;
}

Potential Potential::dilated(int P) const {
  if (P < 1) throw InputError("dilation factor must be >= 1");
  Potential r;
  r.mean = mean;
  r.coeffs.assign(static_cast<size_t>(P) * K(), cplx{});
  for (int k = 1; k <= K(); ++k) r.coeffs[P * k - 1] = coeffs[k - 1];
  return r;
}

Potential Potential::trimmed(double floor) const {
  Potential r = *this;
  while (!r.coeffs.empty() && std::abs(r.coeffs.back()) <= floor) r.coeffs.pop_back();
  return r;
}

Potential operator+(const Potential& a, const Potential& b) {
  Potential r;
  r.mean = a.mean + b.mean;
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
  for (int k = 1; k <= r.K(); ++k) r.coeffs[k - 1] = a.hat(k) + b.hat(k);
  return r;
}

Potential operator*(double s, const Potential& a) {
  Potential r = a;
  r.mean *= s;
  for (auto& c : r.coeffs) c *= s;
  return r;
}

Potential operator-(const Potential& a, const Potential& b) { return a + (-1.0) * b; }

double distance(const Potential& a, const Potential& b) { return std::sqrt((a - b).norm2()); }

FullCoeffs FullCoeffs::from(const Potential& u) {
  FullCoeffs f(u.K());
  for (int k = -u.K(); k <= u.K(); ++k) f[k] = u.hat(k);
  return f;
}

double HardyCoeffs::norm2() const {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return s;
}

HardyCoeffs HardyCoeffs::shifted() const {
  std::vector<cplx> r(a.size() + 1);
  std::copy(a.begin(), a.end(), r.begin() + 1);
  return HardyCoeffs(std::move(r));
}

HardyCoeffs HardyCoeffs::unshifted() const {
  if (a.size() <= 1) return HardyCoeffs(std::vector<cplx>{cplx{}});
  return HardyCoeffs(std::vector<cplx>(a.begin() + 1, a.end()));
}

cplx inner(const HardyCoeffs& f, const HardyCoeffs& g) {
  const size_t n = std::min(f.a.size(), g.a.size());
  cplx s{};
  for (size_t i = 0; i < n; ++i) s += f.a[i] * std::conj(g.a[i]);
  return s;
}

double GridFunction::x(int j) const { return 2.0 * std::numbers::pi * j / G(); }

Potential hilbert_transform(const Potential& u) {
  Potential r;
  r.coeffs.resize(u.coeffs.size());
  for (size_t i = 0; i < u.coeffs.size(); ++i) r.coeffs[i] = cplx(0, -1) * u.coeffs[i];
  return r;
}

HardyCoeffs hardy_project(const FullCoeffs& f) {
  std::vector<cplx> a(static_cast<size_t>(f.K) + 1);
  for (int n = 0; n <= f.K; ++n) a[n] = f.at(n);
  return HardyCoeffs(std::move(a));
}

Eigen::MatrixXcd toeplitz_matrix(const FullCoeffs& f, int M) {
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(M + 1, M + 1);
  for (int n = 0; n <= M; ++n) {
    const int lo = std::max(0, n - f.K), hi = std::min(M, n + f.K);
    for (int m = lo; m <= hi; ++m) T(n, m) = f.at(n - m);
  }
  return T;
}

Eigen::MatrixXcd lax_matrix(const Potential& u, int M) {
  if (M < 1) throw InvalidTruncation("Lax matrix truncation M must be >= 1, got " + std::to_string(M));
  Eigen::MatrixXcd L = -toeplitz_matrix(FullCoeffs::from(u), M);
  for (int n = 0; n <= M; ++n) L(n, n) += static_cast<double>(n);
  return L;
}

GridFunction synthesize(const Potential& u, int G) {
  if (G < 2 * u.K() + 2)
    throw AliasingError("grid of " + std::to_string(G) + " points aliases K = " + std::to_string(u.K()));
  std::vector<cplx> buf(G);
  buf[0] = u.mean;
  for (int k = 1; k <= u.K(); ++k) {
    buf[k] += u.coeffs[k - 1];
    buf[G - k] += std::conj(u.coeffs[k - 1]);
  }
  fft_backward(buf);
  return GridFunction{std::move(buf)};
}

Potential analyze(const GridFunction& g, int K) {
  const int G = g.G();
  if (G < 2 * K + 2)
    throw AliasingError("grid of " + std::to_string(G) + " points cannot resolve K = " + std::to_string(K));
  std::vector<cplx> buf = g.values;
  fft_forward(buf);
  Potential u;
  u.mean = buf[0].real() / G;
  u.coeffs.resize(K);
  for (int k = 1; k <= K; ++k) u.coeffs[k - 1] = 0.5 * (buf[k] + std::conj(buf[G - k])) / static_cast<double>(G);
  return u;
}

Potential multiply(const Potential& a, const Potential& b) {
  const int K = std::max(a.K(), b.K());
  const int Kout = a.K() + b.K();
  const int G = next_pow2(2 * (2 * K + 1));
  auto ga = synthesize(a, G);
  auto gb = synthesize(b, G);
  for (int j = 0; j < G; ++j) ga.values[j] = cplx(ga.values[j].real() * gb.values[j].real(), 0.0);
  return analyze(ga, Kout);
}

}  // namespace bobk
