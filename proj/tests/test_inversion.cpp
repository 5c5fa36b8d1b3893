#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cylradon/forward.hpp"
#include "cylradon/inversion.hpp"
#include "cylradon/phantoms.hpp"

using namespace cylradon;
using Catch::Matchers::WithinAbs;

namespace {

// e^{-t^2} has sphere mode e^{-x^2/2} I0(x^2/2) at rho = arctan x.
ModeProfile gauss0_sphere_mode() {
  return ModeProfile::from_rule(
      [](double rho) {
        const double x = std::tan(rho);
        return cplx(scaled_bessel_i0(x * x / 2), 0);
      },
      Tail::none(), 0.0, -half_pi, half_pi);
}

// Smooth bump supported on 1.5 < |t| < 3, rotation invariant.
CylinderField outer_band() {
  CylinderField f;
  f.eval = [](double, double t) {
    const double a = std::abs(t);
    if (a <= 1.5 || a >= 3) return cplx{};
    return cplx(std::exp(-1 / ((a - 1.5) * (3 - a))), 0);
  };
  f.parity = Parity::even;
  f.vanishes_at_infinity = true;
  return f;
}

}  // namespace

TEST_CASE("mode_invert recovers e^{-t^2} from its closed-form sphere mode") {
  const auto G = gauss0_sphere_mode();
  for (double t : {0.2, 0.5, 1.0, 1.7, 2.0})
    CHECK_THAT(mode_invert(G, 0, t).real(), WithinAbs(std::exp(-t * t), 1e-6));
}

TEST_CASE("mode_invert recovers t/2 from -tan(rho)/4") {
  const auto G = ModeProfile::from_rule([](double rho) { return cplx(-std::tan(rho) / 4, 0); }, Tail::none(), 0.0,
                                        -half_pi, half_pi);
  for (int n : {1, -1})
    for (double t : {0.2, 0.9, 2.5}) CHECK_THAT(mode_invert(G, n, t).real(), WithinAbs(t / 2, 1e-8));
}

TEST_CASE("mode_invert inverts mode_forward for |n| = 2, 3") {
  for (int n : {2, 3}) {
    const auto F = ModeProfile::from_rule(
        [n](double t) { return cplx(std::pow(t, n) * std::exp(-t * t), 0); }, Tail::exact(), n);
    const auto G = ModeProfile::from_rule(
        [&F, n](double rho) { return mode_forward(F, n, std::tan(rho)); }, Tail::none(), 0.0, -half_pi, half_pi);
    for (double t : {0.3, 1.0, 2.0}) CHECK(std::abs(mode_invert(G, n, t) - F(t)) < 1e-6);
  }
}

TEST_CASE("zero data inverts to zero; bad heights and non-cancelling data are refused") {
  const auto Z = ModeProfile::zero();
  for (int n : {0, 1, 4}) CHECK(std::abs(mode_invert(Z, n, 1.0)) == 0.0);
  CHECK_THROWS_AS(mode_invert(Z, 0, 0.0), DomainError);
  CHECK_THROWS_AS(mode_invert(Z, 0, 1e-5), DomainError);
  const auto C = ModeProfile::from_rule([](double) { return cplx(1, 0); }, Tail::none(), 0.0, -half_pi, half_pi);
  CHECK_THROWS_AS(mode_invert(C, 3, 1.0), SingularityError);
}

TEST_CASE("mode_invert at height t reads only rho <= arctan t") {
  const auto G = gauss0_sphere_mode();
  const auto L = ModeProfile::from_rule([](double rho) { return cplx(-std::tan(rho) / 4, 0); }, Tail::none(), 0.0,
                                        -half_pi, half_pi);
  for (double t : {0.3, 1.0, 2.0}) {
    ReadRecorder rec(std::atan(t));
    (void)mode_invert(rec.wrap(G), 0, t);
    (void)mode_invert(rec.wrap(L), 1, t);
    CHECK(rec.reads.load() > 0);
    CHECK(rec.outside.load() == 0);
  }
}

TEST_CASE("growth_check accepts admissible modes and refuses F_n(0) != 0") {
  const auto t_grid = linspace(0, 2, 41);
  ModeSet good(Side::cylinder, 3), bad(Side::cylinder, 3);
  for (int n = -3; n <= 3; ++n) {
    std::vector<cplx> g, b;
    for (double t : t_grid) {
      g.emplace_back(std::pow(t, std::abs(n)) * std::exp(-t * t), 0);
      b.emplace_back(std::exp(-t * t), 0);
    }
    good[n] = ModeProfile::from_samples(t_grid, g);
    bad[n] = ModeProfile::from_samples(t_grid, b);
  }
  const auto rg = growth_check(good, 0.5);
  CHECK(rg.ok);
  CHECK(rg.constants[3 + 3] > 0);
  CHECK(rg.constants[3 + 3] < 1);
  CHECK_FALSE(growth_check(bad, 0.5).ok);
  // roundoff-level content in an otherwise absent mode is not held to the bound
  std::vector<cplx> noise;
  for (double t : t_grid) noise.emplace_back(1e-17 * std::cos(40 * t), 0);
  good[2] = ModeProfile::from_samples(t_grid, noise);
  CHECK(growth_check(good, 0.5).ok);
}

TEST_CASE("reconstruct recovers Gaussian phantoms from sampled R f") {
  QuadratureSpec q;
  q.n_rho = 256;
  const auto t_grid = linspace(0.2, 2.0, 10);
  for (const char* id : {"gauss0", "gauss1", "gauss2"}) {
    const auto f = *phantom_by_id(id).cylinder;
    const auto rec = reconstruct(radon_field(f, q), 4, t_grid, q);
    double err = 0, ref = 0;
    for (std::size_t i = 0; i < rec.field.s.size(); ++i)
      for (std::size_t j = 0; j < t_grid.size(); ++j) {
        err = std::max(err, std::abs(rec.field.at(i, j) - f(rec.field.s[i], t_grid[j])));
        ref = std::max(ref, std::abs(f(rec.field.s[i], t_grid[j])));
      }
    INFO(id);
    CHECK(err < 1e-3 * ref);
  }
}

TEST_CASE("support_check sees zero data on the cap and reads nothing beyond it") {
  QuadratureSpec q;
  q.n_rho = 128;
  const auto band = radon_field(outer_band(), q);
  const auto v = support_check(band, 1.0, 1e-6, q, 2);
  CHECK(v.vanishes);
  CHECK(v.outside_reads == 0);
  const auto g = support_check(radon_field(*phantom_by_id("gauss0").cylinder, q), 1.0, 1e-6, q, 2);
  CHECK_FALSE(g.vanishes);
  CHECK(g.max_abs > 0.3);
  CHECK(g.outside_reads == 0);
}
