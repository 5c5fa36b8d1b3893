#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cylradon/forward.hpp"
#include "cylradon/inversion.hpp"
#include "cylradon/nullspace.hpp"
#include "cylradon/phantoms.hpp"

using namespace cylradon;
using Catch::Matchers::WithinAbs;

TEST_CASE("r_nullgen examples") {
  const auto c2 = r_nullgen(2, {1.0});
  const auto t4 = r_nullgen(4, {1.0, 0.0});
  const auto t5 = r_nullgen(5, {0.0, 1.0});
  for (double x : {0.3, 1.0, 2.0, 3.5}) {
    CHECK_THAT(c2(x).real(), WithinAbs(1.0, 0));
    CHECK_THAT(t4(x).real(), WithinAbs(x * x, 1e-15));
    CHECK_THAT(t5(x).real(), WithinAbs(x, 1e-15));
    CHECK(std::abs(mode_forward(c2, 2, x)) < 1e-10);
    CHECK(std::abs(mode_forward(t4, 4, x)) < 1e-10 * x * x);
    CHECK(std::abs(mode_forward(t5, -5, x)) < 1e-10 * x);
  }
  CHECK_THROWS_AS(r_nullgen(1, {}), NullSpaceEmpty);
  CHECK_THROWS_AS(r_nullgen(0, {}), NullSpaceEmpty);
  CHECK_THROWS_AS(r_nullgen(6, {1.0}), std::invalid_argument);
}

TEST_CASE("nullspace_report counts and residuals") {
  const auto r0 = nullspace_report(0);
  CHECK(r0.r_generators.empty());
  const auto r1 = nullspace_report(1);
  CHECK(r1.r_generators.empty());
  CHECK(r1.rstar_generators.empty());
  const auto r2 = nullspace_report(2);
  CHECK(r2.r_generators.size() == 2);
  CHECK(r2.max_residual < 1e-6);
  const auto r8 = nullspace_report(8);
  for (int n = -8; n <= 8; ++n) CHECK(r8.dimensions[n + 8] == (std::abs(n) >= 2 ? std::abs(n) / 2 : 0));
  long expected = 0;
  for (int n = -8; n <= 8; ++n) expected += null_dimension(n);
  CHECK(static_cast<long>(r8.r_generators.size()) == expected);
  CHECK(static_cast<long>(r8.rstar_generators.size()) == expected);
  CHECK(r8.max_residual < 1e-6);
}

TEST_CASE("polynomial generators are unbounded except the constants") {
  const auto far = linspace(0.0, 1e3, 101);
  for (int n = 2; n <= 8; ++n)
    for (int b = 0; b < n / 2; ++b) {
      std::vector<cplx> c(n / 2, cplx{});
      c[b] = 1.0;
      const auto terms = r_nullgen_terms(n, c);
      double sup = 0;
      for (double t : far) sup = std::max(sup, std::abs(terms(t)));
      if (n - 2 * (b + 1) > 0) {
        CHECK_FALSE(r_nullgen_bounded(terms));
        CHECK(sup >= 1e3);
      } else {
        CHECK(r_nullgen_bounded(terms));
        CHECK(sup == 1.0);
      }
    }
}

TEST_CASE("adding a null field does not change R f") {
  // t^2 cos(4s) and cos(2s) are null fields; the sum is not square integrable, so compare pointwise.
  const auto base = *phantom_by_id("gauss0").cylinder;
  CylinderField null;
  null.eval = [](double s, double t) { return cplx(t * t * std::cos(4 * s) + std::cos(2 * s), 0); };
  null.parity = Parity::even;
  const auto sum = linear_combination(1.0, base, 1.0, null);
  for (double theta : {0.0, 0.7, 2.0})
    for (double rho : {0.2, 0.9, 1.3, 2.5}) {
      const SphereDir d(theta, rho);
      CHECK(std::abs(radon_point(sum, d) - radon_point(base, d)) < 1e-10 * std::max(1.0, std::pow(std::tan(rho), 2)));
    }
}
