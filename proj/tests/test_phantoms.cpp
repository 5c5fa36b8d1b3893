#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cylradon/dual.hpp"
#include "cylradon/forward.hpp"
#include "cylradon/phantoms.hpp"

using namespace cylradon;

TEST_CASE("declared parities hold on 1000 random points") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> S(0, two_pi), T(-4, 4), Rho(0, pi);
  for (const auto& id : phantom_catalog()) {
    const auto p = phantom_by_id(id);
    INFO(id);
    double worst = 0;
    if (p.cylinder) {
      const auto& f = *p.cylinder;
      REQUIRE((f.parity == Parity::even || f.parity == Parity::odd));
      const double sign = f.parity == Parity::even ? 1.0 : -1.0;
      for (int k = 0; k < 1000; ++k) {
        const double s = S(rng), t = T(rng);
        worst = std::max(worst, std::abs(f(s + pi, -t) - sign * f(s, t)) / std::max(1.0, std::abs(f(s, t))));
      }
    }
    if (p.sphere) {
      const auto& g = *p.sphere;
      REQUIRE(g.parity == Parity::even);
      for (int k = 0; k < 1000; ++k) {
        const double th = S(rng), rho = Rho(rng);
        worst = std::max(worst, std::abs(g(th + pi, pi - rho) - g(th, rho)) / std::max(1.0, std::abs(g(th, rho))));
      }
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("closed-form transforms match the computed ones") {
  const std::vector<double> rhos{0.1, 0.6, 1.2, 1.5, 1.9, 2.8};
  for (const auto& id : phantom_catalog()) {
    const auto p = phantom_by_id(id);
    INFO(id);
    if (p.radon) {
      for (double theta : {0.0, 1.3, 4.0})
        for (double rho : rhos) {
          const cplx want = p.radon(theta, rho);
          CHECK(std::abs(radon_point(*p.cylinder, SphereDir(theta, rho)) - want) < 1e-4 * std::max(1.0, std::abs(want)));
        }
    }
    if (p.dual) {
      for (double s : {0.0, 2.0})
        for (double t : {-3.0, 0.0, 0.4, 2.0}) CHECK(std::abs(dual_point(*p.sphere, CylPoint(s, t)) - p.dual(s, t)) < 1e-4);
    }
  }
}

TEST_CASE("gaussian modes use exponent |n| and have the declared band") {
  for (int n : {-3, 0, 1, 2, 5}) {
    const auto p = phantom_by_id("gauss" + std::to_string(n));
    CHECK(p.band == std::abs(n));
    const double t = 0.7, s = 0.3;
    CHECK(std::abs((*p.cylinder)(s, t).real() - std::pow(t, std::abs(n)) * std::exp(-t * t) * std::cos(n * s)) < 1e-15);
  }
  CHECK_THROWS_AS(power_gaussian(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(power_gaussian(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(power_gaussian(0, 0, 0.0), std::invalid_argument);
  CHECK_NOTHROW(power_gaussian(1, 3));
}

TEST_CASE("phantom ids") {
  CHECK(phantom_by_id("const:2.5").cylinder->limit_C(1.0) == cplx(2.5, 0));
  CHECK(phantom_by_id("tail:cos").cylinder->limit_C(0.0) == cplx(1.0, 0));
  CHECK(std::abs((*phantom_by_id("tail:cos").cylinder)(0.0, 30.0) - 1.0) < 1e-12);
  CHECK(std::abs((*phantom_by_id("tail:cos").cylinder)(0.0, -30.0) + 1.0) < 1e-12);
  for (const char* bad : {"", "gauss", "gaussx", "const:", "const:abc", "nope", "sgauss1.5"})
    CHECK_THROWS_AS(phantom_by_id(bad), std::invalid_argument);
  CHECK(scaled_bessel_i0(0.0) == 1.0);
  CHECK(std::abs(scaled_bessel_i0(std::nextafter(500.0, 0.0)) / scaled_bessel_i0(500.0) - 1) < 1e-12);
}
