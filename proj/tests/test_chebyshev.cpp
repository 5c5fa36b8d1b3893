#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cylradon/chebyshev.hpp"

using namespace cylradon;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("cheb_T on all three branches") {
  CHECK_THAT(cheb_T(2, 0.5), WithinAbs(-0.5, 1e-15));
  CHECK_THAT(cheb_T(3, 2.0), WithinRel(26.0, 1e-13));
  CHECK_THAT(cheb_T(5, -1.0), WithinAbs(-1.0, 1e-15));
  CHECK_THAT(cheb_T(3, -2.0), WithinRel(-26.0, 1e-13));
  CHECK_THAT(cheb_T(4, -2.0), WithinRel(97.0, 1e-13));
  CHECK_THAT(cheb_T(0, 7.0), WithinAbs(1.0, 1e-15));
}

TEST_CASE("cheb_T satisfies the three-term recurrence for l <= 20, |x| <= 3") {
  for (double x = -3.0; x <= 3.0; x += 0.0625) {
    for (unsigned l = 1; l < 20; ++l) {
      const double lhs = cheb_T(l + 1, x);
      const double a = 2 * x * cheb_T(l, x);
      const double b = cheb_T(l - 1, x);
      const double scale = std::max(1.0, std::abs(a) + std::abs(b));
      CHECK(std::abs(lhs - (a - b)) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("cheb_T(l, cos u) = cos(l u)") {
  for (double u = 0.0; u <= pi; u += 0.01)
    for (unsigned l = 0; l <= 20; ++l) CHECK_THAT(cheb_T(l, std::cos(u)), WithinAbs(std::cos(l * u), 1e-12));
}

// Independent route to the Cormack integral: p^2 = z^2 cos^2 psi + r^2 sin^2 psi maps
// dp / (p sqrt(r^2 - p^2) sqrt(p^2 - z^2)) to dpsi / p^2, so the identity reads
// r z int_0^{pi/2} T_l(p/z) T_l(p/r) / p^2 dpsi = pi/2. Evaluated with long double
// adaptive-free composite Simpson on a fine grid.
static long double cormack_by_psi(unsigned l, long double z, long double r) {
  const int n = 200000;
  const long double h = (std::acos(-1.0L) / 2) / n;
  long double sum = 0;
  for (int i = 0; i <= n; ++i) {
    const long double psi = i * h;
    const long double p = std::sqrt(z * z * std::cos(psi) * std::cos(psi) + r * r * std::sin(psi) * std::sin(psi));
    const long double v = cheb_T<long double>(l, p / z) * cheb_T<long double>(l, p / r) / (p * p);
    const long double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    sum += w * v;
  }
  return r * z * sum * h / 3;
}

TEST_CASE("Cormack integral agrees with an independent parametrization") {
  for (unsigned l : {0u, 1u, 3u, 6u}) {
    const long double oracle = cormack_by_psi(l, 0.9L, 2.0L);
    CHECK_THAT(static_cast<double>(oracle), WithinAbs(half_pi, 1e-9));
    CHECK_THAT(cormack_check(l, 0.9, 2.0).value, WithinAbs(static_cast<double>(oracle), 1e-9));
  }
}

TEST_CASE("Cormack identity holds for random pairs including small z/r") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (unsigned l = 0; l <= 8; ++l) {
    for (int k = 0; k < 10; ++k) {
      const double r = 3.0 * (1.0 - U(rng));
      const double z = r * U(rng);
      if (!(z > 0) || !(z < r)) continue;
      CHECK(cormack_check(l, z, r).residual < 1e-10);
    }
  }
  CHECK(cormack_check(8, 1e-3, 2.5).residual < 1e-10);
}

TEST_CASE("Cormack check rejects bad arguments") {
  CHECK_THROWS_AS(cormack_check(2, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(cormack_check(2, 0.0, 0.5), DomainError);
}
