#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bobk/birkhoff.hpp"
#include "bobk/errors.hpp"
#include "bobk/finite_gap.hpp"
#include "oracles.hpp"

using namespace bobk;
using oracle::cplx;

TEST_CASE("one-gap (1, 1/2): zeta_1 = -1/sqrt(3), kappa_0 = kappa_1 = mu_1 = 3/4") {
  const OneGap g = one_gap_closed_form(1, 0.5);
  const LaxSpectrum s = compute_spectrum(g.u, 4, 1e-12);
  const std::vector<double> lam(s.lambdas.begin(), s.lambdas.begin() + s.n_trusted + 1);
  const std::vector<double> gam(s.gaps.begin(), s.gaps.begin() + s.n_trusted + 1);
  const KappaWeights kw = kappa_weights(lam, gam, 1);
  CHECK(kw.kappa[0] == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(kw.kappa[1] == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(kw.mu[1] == doctest::Approx(0.75).epsilon(1e-10));
  const BirkhoffCoords z = forward_map(g.u, 6).trimmed(1e-10);
  REQUIRE(z.N() == 1);
  CHECK(std::abs(z.at(1) + 1.0 / std::sqrt(3.0)) < 1e-10);
}

TEST_CASE("one-gap family: only zeta_N is nonzero and equals -sqrt(N + gamma_N) w") {
  const std::pair<int, cplx> cases[] = {{1, std::polar(0.3, std::numbers::pi / 4)}, {2, 0.6}, {3, 0.25}};
  for (const auto& [N, w] : cases) {
    const OneGap g = one_gap_closed_form(N, w);
    const BirkhoffCoords z = forward_map(g.u, N + 4);
    for (int n = 1; n <= N + 4; ++n) CHECK(std::abs(z.at(n) - (n == N ? g.zeta() : cplx{})) < 1e-9);
  }
}

TEST_CASE("zero potential has zero coordinates") {
  const BirkhoffCoords z = forward_map(Potential{}, 5);
  for (int n = 1; n <= 5; ++n) CHECK(z.at(n) == cplx{});
  CHECK(z.trimmed(0.0).N() == 0);
}

TEST_CASE("small potentials: zeta_n linearizes to -u^(n) / sqrt(n)") {
  // grad zeta_n(0) = -e^{-inx}/sqrt(n), so zeta_n(eps v) = -eps v^(n)/sqrt(n) + O(eps^2).
  Potential u;
  u.coeffs = {cplx(0.3, 0.1), cplx(-0.2, 0.4), cplx(0.1, 0.0)};
  const double eps = 1e-5;
  const BirkhoffCoords z = forward_map(eps * u, 3, 1e-13);
  for (int n = 1; n <= 3; ++n) {
    const cplx lin = -eps * u.coeffs[n - 1] / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(z.at(n) - lin) < 1e-3 * eps);
  }
}

TEST_CASE("trace formulas and Parseval on random potentials") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 8; ++t) {
    const Potential u = oracle::random_potential(rng, 1 + t % 8, 0.3 + 0.2 * t);
    const LaxSpectrum s = compute_spectrum(u, 40, 1e-12);
    const TraceResiduals tr = trace_residuals(u, s);
    CHECK(tr.norm < 1e-8);
    CHECK(tr.mean < 1e-8);
    const BirkhoffCoords z = forward_from_spectrum(s, s.n_trusted, u.norm2());
    CHECK(std::abs(z.h_half_norm2() - u.norm2()) < 1e-8 * (1 + u.norm2()));
  }
}

TEST_CASE("generating function: both representations match the spectral sum") {
  std::mt19937_64 rng(29);
  const Potential u = oracle::random_potential(rng, 4, 1.2);
  const LaxSpectrum s = compute_spectrum(u, 40, 1e-12);
  for (double lam : {-s.lambdas[0] + 0.2, 2.0, 10.0, -(s.lambdas[1] + s.lambdas[2]) / 2}) {
    // oracle: sum |<1|f_n>|^2 / (lambda_n + lambda) over the whole truncated basis
    double sum = 0.0;
    for (int n = 0; n <= s.M; ++n) sum += std::norm(s.one_fn(n)) / (s.lambdas[n] + lam);
    const GeneratingValue gv = generating_function(u, s, lam);
    CHECK(std::abs(gv.resolvent - sum) < 1e-10 * (1 + std::abs(sum)));
    CHECK(std::abs(gv.product - sum) < 1e-8 * (1 + std::abs(sum)));
  }
  CHECK_THROWS_AS(generating_function(u, s, -s.lambdas[2] + 1e-8), PoleProximity);
}

TEST_CASE("translation rotates the coordinates; forward map needs zero mean") {
  std::mt19937_64 rng(2);
  const Potential u = oracle::random_potential(rng, 3, 1.0);
  const BirkhoffCoords a = forward_map(u, 6), b = forward_map(u.translated(1.3), 6);
  CHECK(h_half_distance(a.rotated(1.3), b) < 1e-9);
  Potential v = u;
  v.mean = 0.5;
  CHECK_THROWS_AS(forward_map(v, 4), InputError);
}

TEST_CASE("BirkhoffCoords helpers") {
  BirkhoffCoords z({cplx(1, 1), 0.0, cplx(0, 1e-8)});
  CHECK(z.gamma(1) == doctest::Approx(2.0));
  CHECK(z.at(7) == cplx{});
  CHECK_FALSE(z.angle(2).has_value());
  CHECK(*z.angle(1) == doctest::Approx(std::numbers::pi / 4));
  CHECK(z.trimmed(1e-6).N() == 1);
  CHECK(z.h_half_norm2() == doctest::Approx(4.0 + 6e-16));
  CHECK(z.gammas().size() == 4);
  CHECK(z.gammas()[0] == 0.0);
}

TEST_CASE("kappa weights reject coincident eigenvalues") {
  const std::vector<double> lam = {0.0, 0.0, 2.0};
  const std::vector<double> gam = {0.0, 0.5, 0.0};
  CHECK_THROWS_AS(kappa_weights(lam, gam, 1), InvalidSpectrum);
}
