#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "cylradon/forward.hpp"
#include "cylradon/phantoms.hpp"

using namespace cylradon;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Sum of shifted, non-symmetric Gaussian bumps: neither even nor odd.
CylinderField random_field(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1, 1);
  std::vector<std::array<double, 4>> bumps;
  for (int k = 0; k < 4; ++k) bumps.push_back({U(rng), 1.5 * U(rng), std::floor(4 * U(rng)), 3 * U(rng)});
  CylinderField f;
  f.eval = [bumps](double s, double t) {
    double v = 0;
    for (const auto& b : bumps) v += b[0] * std::exp(-(t - b[1]) * (t - b[1])) * std::cos(b[2] * s + b[3]);
    return cplx(v, 0.3 * v * std::sin(s));
  };
  f.parity = Parity::mixed;
  f.vanishes_at_infinity = true;
  return f;
}

}  // namespace

TEST_CASE("constant fields map to the same constant") {
  const auto f = constant_phantom(2.5);
  for (double rho : {0.0, 0.4, 1.2, 1.5, 1.5707, 2.0, pi})
    CHECK_THAT(radon_point(f, SphereDir(0.3, rho)).real(), WithinAbs(2.5, 1e-13));
}

TEST_CASE("odd fields are annihilated") {
  CylinderField lin;
  lin.eval = [](double, double t) { return cplx(t, 0); };
  lin.parity = Parity::odd;
  const auto odd = odd_phantom();
  for (double rho : {0.1, 0.8, 1.4, 1.5706, 2.9}) {
    CHECK(std::abs(radon_point(lin, SphereDir(1.1, rho))) < 1e-10);
    CHECK(std::abs(radon_point(odd, SphereDir(1.1, rho))) < 1e-10);
  }
}

TEST_CASE("t cos s has transform -(tan rho / 2) cos theta") {
  const auto f = tcos_phantom();
  for (double theta : {0.0, 0.9, 2.5})
    for (double rho : {0.2, 1.0, 1.4, 1.55, 2.3}) {
      const double want = -std::tan(rho) / 2 * std::cos(theta);
      CHECK(std::abs(radon_point(f, SphereDir(theta, rho)) - want) < 1e-10 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("Gaussian transform matches e^{-x^2/2} I0(x^2/2) on both quadrature paths") {
  const auto p = phantom_by_id("gauss0");
  for (double rho : {0.0, 0.5, 1.2, 1.33, 1.4, 1.5, 1.57, 1.5707963, 2.0, 3.0}) {
    const cplx got = radon_point(*p.cylinder, SphereDir(0.4, rho));
    CHECK_THAT(got.real(), WithinAbs(p.radon(0.4, rho).real(), 1e-11));
  }
  CHECK_THAT(radon_point(*p.cylinder, SphereDir(0, std::atan(1.0))).real(), WithinAbs(0.64503527044915, 1e-12));
}

TEST_CASE("equator values") {
  QuadratureSpec q;
  CHECK_THAT(radon_equator(constant_phantom(3.0), 0.7, q).real(), WithinAbs(3.0, 1e-13));
  CHECK(std::abs(radon_equator(gaussian_mode(2), 0.7, q)) == 0.0);
  const auto tc = phantom_by_id("tail:cos");
  CHECK_THAT(radon_equator(*tc.cylinder, 0.0, q).real(), WithinAbs(-2 / pi, 1e-13));
  CHECK_THAT(radon_equator(*phantom_by_id("tail:const").cylinder, 1.0, q).real(), WithinAbs(1.0, 1e-13));
  CHECK_THROWS_AS(radon_equator(tcos_phantom(), 0.0, q), MissingBoundaryData);
  CHECK_THROWS_AS(radon_point(constant_phantom(1.0), SphereDir(0, half_pi)), EquatorUndefined);
}

TEST_CASE("equator value is the limit from rho < pi/2; from above it is the value at theta + pi") {
  const auto tc = *phantom_by_id("tail:cos").cylinder;
  for (double theta : {0.0, 1.0, 2.0}) {
    const double eq = radon_equator(tc, theta).real();
    const double below = radon_point(tc, SphereDir(theta, half_pi - 1e-7)).real();
    const double above = radon_point(tc, SphereDir(theta, half_pi + 1e-7)).real();
    CHECK_THAT(below, WithinAbs(eq, 1e-6));
    CHECK_THAT(above, WithinAbs(radon_equator(tc, theta + pi).real(), 1e-6));
  }
}

TEST_CASE("radon_grid examples") {
  const auto thetas = uniform_angles(8);
  std::vector<double> rhos;
  for (int j = 0; j < 8; ++j) rhos.push_back((j + 0.5) * pi / 8);
  auto ones = radon_grid(constant_phantom(1.0), thetas, rhos);
  for (const auto& v : ones.values) CHECK_THAT(v.real(), WithinAbs(1.0, 1e-13));
  auto zeros = radon_grid(odd_phantom(), thetas, rhos);
  for (const auto& v : zeros.values) CHECK(std::abs(v) < 1e-10);
  auto tc = radon_grid(tcos_phantom(), thetas, rhos);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      CHECK_THAT(tc.at(i, j).real(), WithinAbs(-std::tan(rhos[j]) / 2 * std::cos(thetas[i]), 1e-10));
  // equator rows go through the limit
  std::vector<double> with_eq{0.3, half_pi};
  auto eq = radon_grid(constant_phantom(2.0), thetas, with_eq);
  for (const auto& v : eq.values) CHECK_THAT(v.real(), WithinAbs(2.0, 1e-13));
}

TEST_CASE("L2 norms") {
  QuadratureSpec q;
  CylinderField g;
  g.eval = [](double, double t) { return cplx(std::exp(-t * t), 0); };
  g.vanishes_at_infinity = true;
  CHECK_THAT(norm_cyl(g, q), WithinRel(std::sqrt(two_pi) * std::pow(half_pi, 0.25), 1e-12));
  CHECK_THAT(norm_sph(constant_sphere(1.0), q), WithinRel(std::sqrt(4 * pi), 1e-12));
  CylinderField zero;
  zero.eval = [](double, double) { return cplx{}; };
  zero.vanishes_at_infinity = true;
  CHECK_THAT(norm_cyl(zero, q), WithinAbs(0.0, 0.0));
  CHECK_THROWS_AS(norm_cyl(constant_phantom(1.0), q), TailError);
}

TEST_CASE("output of R is even for arbitrary fields") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(0, two_pi), rh(0, pi);
  for (int k = 0; k < 20; ++k) {
    const auto f = random_field(rng);
    for (int i = 0; i < 10; ++i) {
      const double theta = th(rng), rho = rh(rng);
      if (uses_equator(rho)) continue;
      const cplx a = radon_point(f, SphereDir(theta, rho));
      const cplx b = radon_point(f, SphereDir(theta + pi, pi - rho));
      CHECK(std::abs(a - b) < 1e-10);
    }
  }
}

TEST_CASE("R is linear") {
  std::mt19937_64 rng(5);
  const auto f = random_field(rng);
  const auto g = random_field(rng);
  const cplx alpha(0.7, -0.2), beta(-1.3, 0.5);
  const auto h = linear_combination(alpha, f, beta, g);
  for (double rho : {0.3, 1.1, 1.52, 2.4}) {
    const SphereDir d(0.9, rho);
    const cplx lhs = radon_point(h, d);
    const cplx rhs = alpha * radon_point(f, d) + beta * radon_point(g, d);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("continuity bound on a few phantoms") {
  QuadratureSpec q;
  q.n_angular = 64;
  for (const char* id : {"gauss0", "gauss1", "gauss3"}) {
    const auto f = *phantom_by_id(id).cylinder;
    const double ratio = norm_sph(radon_field(f, q), q) / norm_cyl(f, q);
    CHECK(ratio <= std::sqrt(2.0));
    CHECK(ratio > 0.1);
  }
}
