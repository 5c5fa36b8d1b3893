#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cylradon/geometry.hpp"

using namespace cylradon;
using Catch::Matchers::WithinAbs;

TEST_CASE("normal_vector at the pole, the equator and a generic direction") {
  auto n = normal_vector(SphereDir(0, 0));
  CHECK_THAT(n[0], WithinAbs(0, 1e-16));
  CHECK_THAT(n[1], WithinAbs(0, 1e-16));
  CHECK_THAT(n[2], WithinAbs(1, 1e-16));
  n = normal_vector(SphereDir(0, half_pi));
  CHECK_THAT(n[0], WithinAbs(1, 1e-16));
  CHECK_THAT(n[2], WithinAbs(0, 1e-16));
  n = normal_vector(SphereDir(half_pi, pi / 4));
  CHECK_THAT(n[0], WithinAbs(0, 1e-16));
  CHECK_THAT(n[1], WithinAbs(std::sqrt(0.5), 1e-15));
  CHECK_THAT(n[2], WithinAbs(std::sqrt(0.5), 1e-15));
}

TEST_CASE("ellipse_point examples") {
  auto p = ellipse_point(SphereDir(0, 0), 1.0);
  CHECK_THAT(p.s, WithinAbs(1.0, 0));
  CHECK_THAT(p.t, WithinAbs(0.0, 1e-16));
  p = ellipse_point(SphereDir(0, pi / 4), 0);
  CHECK_THAT(p.t, WithinAbs(-1.0, 1e-15));
  p = ellipse_point(SphereDir(pi / 3, pi / 4), pi / 3);
  CHECK_THAT(p.s, WithinAbs(pi / 3, 1e-15));
  CHECK_THAT(p.t, WithinAbs(-1.0, 1e-15));
  CHECK_THROWS_AS(ellipse_point(SphereDir(0.3, half_pi), 0.0), EquatorUndefined);
}

TEST_CASE("incidence examples") {
  const double s = 0.7, t = 0.3, v = 1.2;
  const double a = std::sqrt(v * v + t * t);
  const SphereDir d(s + std::acos(-t / a), std::atan(a));
  CHECK_THAT(incidence(d, CylPoint(s, t)), WithinAbs(0.0, 1e-12));
  CHECK_THAT(incidence(SphereDir(0, 0), CylPoint(2.0, 0.0)), WithinAbs(0.0, 1e-16));
  CHECK_THAT(incidence(SphereDir(0, pi / 4), CylPoint(0, 1)), WithinAbs(std::sqrt(2.0), 1e-15));
}

TEST_CASE("normalization and Xi membership") {
  CHECK_THAT(SphereDir(-half_pi, 1.0).theta, WithinAbs(3 * half_pi, 1e-15));
  CHECK_THAT(CylPoint(7.0, 0.0).s, WithinAbs(7.0 - two_pi, 1e-15));
  CHECK(in_xi(SphereDir(0, 1.0)));
  CHECK_FALSE(in_xi(SphereDir(0, half_pi)));
  CHECK_FALSE(in_xi(SphereDir(0, half_pi + 5e-13)));
  CHECK(in_xi(SphereDir(0, half_pi + 1e-9)));
  CHECK_THROWS_AS(SphereDir(0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(SphereDir(0, 3.2), std::invalid_argument);
}

TEST_CASE("random ellipse points lie on their plane; normals are unit; ellipse is periodic") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> th(0, two_pi), rh(0, pi), ss(-20, 20);
  for (int i = 0; i < 10000; ++i) {
    const SphereDir d(th(rng), rh(rng));
    const auto n = normal_vector(d);
    CHECK_THAT(std::hypot(n[0], n[1], n[2]), WithinAbs(1.0, 1e-14));
    if (!in_xi(d)) continue;
    const double s = ss(rng);
    const auto p = ellipse_point(d, s);
    CHECK_THAT(incidence(d, p), WithinAbs(0.0, 1e-12));
    const auto p2 = ellipse_point(d, s + two_pi);
    CHECK(std::abs(p2.t - p.t) <= 1e-12 * std::max(1.0, std::abs(p.t)));
  }
}
