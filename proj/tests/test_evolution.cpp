#include <doctest.h>

#include <cmath>

#include "bobk/errors.hpp"
#include "bobk/evolution.hpp"
#include "bobk/finite_gap.hpp"
#include "bobk/inverse.hpp"
#include "oracles.hpp"

using namespace bobk;
using oracle::cplx;

TEST_CASE("frequencies: free case and a single gap") {
  const FrequencyVector w0 = frequencies({0.0, 0.0, 0.0, 0.0});
  for (int n = 1; n <= 3; ++n) CHECK(w0[n] == n * n);
  const FrequencyVector w = frequencies({0.0, 1.0 / 3.0}, 3);
  CHECK(w[1] == doctest::Approx(1.0 / 3.0));
  CHECK(w[2] == doctest::Approx(10.0 / 3.0));
  CHECK(w[3] == doctest::Approx(25.0 / 3.0));
}

TEST_CASE("frequencies are the partial derivatives of the Hamiltonian in the actions") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> d(0.0, 0.5);
  std::vector<double> g(7, 0.0);
  for (int n = 1; n <= 6; ++n) g[n] = d(rng);
  const FrequencyVector w = frequencies(g);
  const double h = 1e-5;
  for (int n = 1; n <= 6; ++n) {
    auto gp = g, gm = g;
    gp[n] += h;
    gm[n] -= h;
    const double fd = (hamiltonian_actions(gp) - hamiltonian_actions(gm)) / (2 * h);
    CHECK(std::abs(fd - w[n]) < 1e-9);
  }
  // omega_n - n^2 + ||u||^2 = 2 sum_{k>n} (k - n) gamma_k with ||u||^2 = 2 sum k gamma_k
  double norm2 = 0.0;
  for (int k = 1; k <= 6; ++k) norm2 += 2 * k * g[k];
  for (int n = 1; n <= 6; ++n) {
    double rhs = 0.0;
    for (int k = n + 1; k <= 6; ++k) rhs += 2 * (k - n) * g[k];
    CHECK(w[n] - n * n + norm2 == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("Hamiltonian: actions formula and direct quadrature agree on the one-gap datum") {
  CHECK(hamiltonian_actions({0.0}) == 0.0);
  CHECK(hamiltonian_actions({0.0, 1.0 / 3.0}) == doctest::Approx(2.0 / 9.0));
  const OneGap g = one_gap_closed_form(1, 0.5);
  CHECK(std::abs(hamiltonian_direct(g.u) - 2.0 / 9.0) < 1e-8);
  // independent quadrature of (1/2)<|D|u, u> - (1/2pi) int u^3 / 3 on a fine grid
  const int G = 4096;
  double cubic = 0.0;
  for (int j = 0; j < G; ++j) cubic += std::pow(oracle::eval(g.u, 2 * oracle::pi * j / G), 3);
  cubic /= G;
  double quad = 0.0;
  for (int k = 1; k <= g.u.K(); ++k) quad += k * std::norm(g.u.coeffs[k - 1]);
  CHECK(std::abs(quad - cubic / 3.0 - 2.0 / 9.0) < 1e-8);
}

TEST_CASE("bo_rhs for 2 cos x is -2 sin x + 4 sin 2x") {
  Potential u;
  u.coeffs = {1.0};
  const Potential r = bo_rhs(u);
  for (double x : {0.1, 1.0, 2.7}) CHECK(r.eval(x) == doctest::Approx(-2 * std::sin(x) + 4 * std::sin(2 * x)).epsilon(1e-13));
}

TEST_CASE("quadrature flow rotates each coordinate at its frequency") {
  const BirkhoffCoords z({cplx(0.2, 0.1), cplx(-0.3, 0.0)});
  const BirkhoffCoords zt = evolve_quadrature(z, 0.8);
  const FrequencyVector w = frequencies(z.gammas());
  for (int n = 1; n <= 2; ++n) {
    CHECK(std::abs(zt.at(n) - z.at(n) * std::polar(1.0, w[n] * 0.8)) < 1e-15);
    CHECK(zt.gamma(n) == doctest::Approx(z.gamma(n)));
  }
}

TEST_CASE("direct integrator conserves mass, norm and energy, and keeps times increasing") {
  std::mt19937_64 rng(31);
  Potential u = oracle::random_potential(rng, 4, 1.0);
  u.mean = 0.2;
  DirectConfig cfg;
  cfg.snapshots = 5;
  const EvolutionTrace tr = evolve_direct(u, 0.5, cfg);
  REQUIRE(tr.times.size() == 6);
  for (size_t i = 1; i < tr.times.size(); ++i) CHECK(tr.times[i] > tr.times[i - 1]);
  CHECK(tr.max_mean_drift() < 1e-14);
  CHECK(tr.max_norm_drift() < 1e-8);
  CHECK(tr.max_hamiltonian_drift() < 1e-8);
  CHECK(tr.config.dt > 0.0);
  Potential wide;
  wide.coeffs.assign(40, 0.01);
  DirectConfig small;
  small.grid = 64;
  CHECK_THROWS_AS(evolve_direct(wide, 0.1, small), AliasingError);
  small.grid = 48;
  CHECK_THROWS_AS(evolve_direct(u, 0.1, small), InputError);
}

TEST_CASE("direct and quadrature flows agree on a one-gap datum") {
  const OneGap g = one_gap_closed_form(1, 0.5);
  const EvolutionTrace tr = evolve_direct(g.u, 0.5);
  const BirkhoffCoords z0({g.zeta()});
  const Potential q = reconstruct_finite_gap(evolve_quadrature(z0, 0.5), g.u.K());
  CHECK(distance(tr.states.back(), q) < 1e-6);
}

TEST_CASE("Lax pair residual vanishes on the interior block") {
  Potential u;
  u.coeffs = {1.0};
  CHECK(lax_residual(u, 64) < 1e-9);
  std::mt19937_64 rng(13);
  const Potential v = oracle::random_potential(rng, 5, 2.0);
  CHECK(lax_residual(v, 80) < 1e-9);
  CHECK_THROWS_AS(lax_residual(v, 8), InvalidTruncation);
}

TEST_CASE("recurrence probe") {
  // a single active angle returns exactly to its start after 2 pi / omega
  const BirkhoffCoords one({cplx(0.4, 0.0)});
  const double w = frequencies(one.gammas())[1];
  const auto t1 = recurrence_probe(one, 3 * 2 * oracle::pi / w + 0.1, 1e-6);
  REQUIRE(t1.size() == 3);
  CHECK(t1[0] == doctest::Approx(2 * oracle::pi / w).epsilon(1e-12));
  CHECK(recurrence_probe(BirkhoffCoords{}, 10.0, 1e-3).empty());
  // two gaps: each returned time is a genuine near-recurrence
  const BirkhoffCoords two({cplx(0.3, 0.0), cplx(0.0, 0.2)});
  for (double t : recurrence_probe(two, 40.0, 0.05))
    CHECK(h_half_distance(evolve_quadrature(two, t), two) <= 0.05 + 1e-9);
}
