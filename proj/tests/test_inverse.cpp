#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bobk/birkhoff.hpp"
#include "bobk/errors.hpp"
#include "bobk/finite_gap.hpp"
#include "bobk/inverse.hpp"
#include "bobk/validation.hpp"
#include "oracles.hpp"

using namespace bobk;
using oracle::cplx;

namespace {

// Greedy matching distance between two pole sets of equal size.
double pole_set_distance(std::vector<cplx> a, std::vector<cplx> b) {
  double worst = 0.0;
  for (const auto& q : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](cplx x, cplx y) { return std::abs(x - q) < std::abs(y - q); });
    worst = std::max(worst, std::abs(*it - q));
    b.erase(it);
  }
  return worst;
}

}  // namespace

TEST_CASE("single coordinate -1/sqrt(3): M_00 = 1/2 and the pole is 1/2") {
  const BirkhoffCoords z({cplx(-1.0 / std::sqrt(3.0))});
  const SpectralData d = spectral_data_from_zeta(z);
  CHECK(d.lambdas[0] == doctest::Approx(-1.0 / 3.0));
  CHECK(d.kappas[0] == doctest::Approx(0.75));
  CHECK(d.mus[1] == doctest::Approx(0.75));
  CHECK(std::abs(d.Mmat(0, 0) - 0.5) < 1e-14);
  const auto q = finite_gap_poles(z);
  REQUIRE(q.size() == 1);
  CHECK(std::abs(q[0] - 0.5) < 1e-14);
  const Potential u = reconstruct_finite_gap(z);
  CHECK(distance(u, one_gap_closed_form(1, 0.5).u) < 1e-13);
}

TEST_CASE("empty coordinates give the zero potential") {
  CHECK(reconstruct_finite_gap(BirkhoffCoords{}).norm2() == 0.0);
  CHECK(reconstruct_finite_gap(BirkhoffCoords({0.0, 0.0})).norm2() == 0.0);
}

TEST_CASE("round trip through the forward map recovers random finite-gap potentials") {
  std::mt19937_64 rng(41);
  for (int N = 1; N <= 5; ++N) {
    CAPTURE(N);
    const FiniteGapSpec spec = random_finite_gap(rng, N);
    const Potential u = from_poles(spec);
    const BirkhoffCoords z = forward_map(u, N + 3).trimmed(1e-10);
    CHECK(z.N() == N);
    CHECK(pole_set_distance(spec.poles, finite_gap_poles(z)) < 1e-8);
    CHECK(distance(reconstruct_finite_gap(z, u.K()), u) < 1e-8);
  }
}

TEST_CASE("inverse then forward returns the coordinates") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(-0.4, 0.4);
  for (int N = 1; N <= 4; ++N) {
    std::vector<cplx> zeta(N);
    for (auto& c : zeta) c = cplx(d(rng), d(rng));
    const BirkhoffCoords z(zeta);
    const Potential u = reconstruct_finite_gap(z);
    CHECK(h_half_distance(forward_map(u, N + 3).trimmed(1e-10), z) < 1e-8);
  }
}

TEST_CASE("resolvent reconstruction agrees with the pole formula") {
  std::mt19937_64 rng(12);
  for (int N = 1; N <= 4; ++N) {
    std::vector<cplx> q = random_finite_gap(rng, N, 0.1, 0.6).poles;
    const BirkhoffCoords z = forward_map(pole_sum_potential(q), N + 2).trimmed(1e-10);
    ResolventOptions ro;
    ro.K = 60;
    const Potential a = reconstruct_resolvent(z, ro);
    const Potential b = reconstruct_finite_gap(z, 60);
    CHECK(distance(a, b) < 1e-8);
    // one point inside the disc
    const SpectralData data = spectral_data_from_zeta(z);
    const cplx zz = std::polar(0.7, 1.1);
    cplx ref = 0.0;
    for (const auto& p : finite_gap_poles(z)) ref += p * zz / (1.0 - p * zz);
    CHECK(std::abs(hardy_part_resolvent(data, zz) - ref) < 1e-10);
  }
  ResolventOptions bad;
  bad.radius = 0.995;
  CHECK_THROWS_AS(reconstruct_resolvent(BirkhoffCoords({0.1}), bad), ConditioningError);
}

TEST_CASE("spectral data: M restricted to the block is a contraction, lambdas follow the gaps") {
  const BirkhoffCoords z({cplx(0.3, 0.1), cplx(-0.2, 0.2), cplx(0.05, -0.1)});
  const SpectralData d = spectral_data_from_zeta(z);
  double tail = 0.0;
  for (int n = 3; n >= 0; --n) {
    CHECK(d.lambdas[n] == doctest::Approx(n - tail).epsilon(1e-14));
    if (n >= 1) tail += z.gamma(n);
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(d.Mmat);
  CHECK(svd.singularValues()(0) <= 1.0 + 1e-12);
  double s = 0.0;
  for (int n = 0; n <= 3; ++n) s += std::norm(d.one_fn[n]);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-12));  // 1 = sum |<1|f_n>|^2 for finite gap
}
