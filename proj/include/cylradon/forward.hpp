#pragma once

// Rf(theta, rho) = (1/2pi) int_0^{2pi} f(s, -tan(rho) cos(theta - s)) ds on Xi, and the
// equator value (1/pi) int_{theta+pi/2}^{theta+3pi/2} C(s) ds.
//
// For |tan rho| <= steep_slope the mean is a periodic trapezoid sum. Beyond that the
// section is steep and f(s, t) concentrates in s-windows of width ~1/|tan rho|; there
// the integral is taken in phi with t = x sin(phi), using Gauss-Legendre panels between
// the points where |t| crosses 1/4, 1/2, 1, 2, 4, ....

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "cylradon/errors.hpp"
#include "cylradon/field.hpp"
#include "cylradon/geometry.hpp"
#include "cylradon/parallel.hpp"
#include "cylradon/quadrature.hpp"

namespace cylradon {

inline constexpr double steep_slope = 4.0;
inline constexpr double max_slope = 1e8;

namespace detail {

/// Symmetric phi-breakpoints on [-pi/2, pi/2] for slope x > 0.
inline std::vector<double> steep_breaks(double x) {
  std::vector<double> pos{0.0};
  for (double tau = 0.25; tau < x; tau *= 2) pos.push_back(std::asin(tau / x));
  pos.push_back(half_pi);
  std::vector<double> b;
  for (std::size_t i = pos.size(); i-- > 1;) b.push_back(-pos[i]);
  b.insert(b.end(), pos.begin(), pos.end());
  return b;
}

}  // namespace detail

inline cplx radon_point(const CylinderField& f, const SphereDir& d, const QuadratureSpec& q = {}) {
  if (!in_xi(d)) throw EquatorUndefined("radon_point: direction on the equator, use radon_equator");
  const double x = std::tan(d.rho);
  if (std::abs(x) > max_slope) throw EquatorUndefined("radon_point: |tan rho| beyond 1e8, use radon_equator");
  if (std::abs(x) <= steep_slope) {
    return periodic_mean([&](double s) { return f(s, -x * std::cos(d.theta - s)); }, q.n_angular);
  }
  // -x cos(theta - s) = |x| cos(theta' - s) with theta' = theta + pi when x > 0
  const double ax = std::abs(x);
  const double th = x > 0 ? d.theta : d.theta + pi;
  const auto breaks = detail::steep_breaks(ax);
  const cplx sum = integrate_panels(
      [&](double phi) {
        const double t = ax * std::sin(phi);
        return f(th + half_pi + phi, t) + f(th - half_pi - phi, t);
      },
      breaks, q.n_tail);
  return sum / two_pi;
}

/// Limit of Rf(theta, rho) as rho -> pi/2 from below. From above the limit is the
/// value at theta + pi; the two agree for every theta iff C has no odd harmonics.
inline cplx radon_equator(const CylinderField& f, double theta, const QuadratureSpec& q = {}) {
  if (f.vanishes_at_infinity) return {};
  if (!f.limit_C) throw MissingBoundaryData("radon_equator: field has neither a limit function nor decay");
  std::vector<double> breaks;
  for (int k = 0; k <= 4; ++k) breaks.push_back(theta + half_pi + pi * k / 4);
  const int nodes = std::max(4, q.n_angular / 4);
  return integrate_panels([&](double s) { return f.limit_C(s); }, breaks, nodes) / pi;
}

/// True where the equator path applies: rho within tolerance of pi/2 or |tan rho| > 1e8.
inline bool uses_equator(double rho) {
  return std::abs(rho - half_pi) <= equator_tol || std::abs(std::tan(rho)) > max_slope;
}

inline cplx radon_value(const CylinderField& f, double theta, double rho, const QuadratureSpec& q = {}) {
  if (uses_equator(rho)) return radon_equator(f, theta, q);
  return radon_point(f, SphereDir(theta, rho), q);
}

inline SphereSamples radon_grid(const CylinderField& f, std::span<const double> thetas, std::span<const double> rhos,
                                const QuadratureSpec& q = {}) {
  SphereSamples out;
  out.thetas.assign(thetas.begin(), thetas.end());
  out.rhos.assign(rhos.begin(), rhos.end());
  out.values.assign(thetas.size() * rhos.size(), cplx{});
  parallel_for(thetas.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < rhos.size(); ++j) out.at(i, j) = radon_value(f, thetas[i], rhos[j], q);
  });
  return out;
}

/// Rf as a field on the whole sphere. The output is even for every input.
inline SphereField radon_field(const CylinderField& f, const QuadratureSpec& q = {}) {
  return {[f, q](double theta, double rho) { return radon_value(f, theta, rho, q); }, Parity::even};
}

/// L2 norm on the cylinder with measure dt ds.
inline double norm_cyl(const CylinderField& f, const QuadratureSpec& q = {}) {
  if (!f.vanishes_at_infinity) throw TailError("norm_cyl: field is not declared square integrable");
  const double mean = periodic_mean(
      [&](double s) {
        return integrate_half_line(
            [&](double t) { return std::norm(f(s, t)) + std::norm(f(s, -t)); }, 0.0, q);
      },
      q.n_angular);
  return std::sqrt(two_pi * mean);
}

/// L2 norm on the sphere with the area measure sin(rho) drho dtheta. Panels break at
/// the equator, where Rf is only Lipschitz.
inline double norm_sph(const SphereField& g, const QuadratureSpec& q = {}) {
  const std::vector<double> breaks{0.0, pi / 4, half_pi, 3 * pi / 4, pi};
  std::vector<double> row(q.n_angular);
  const auto thetas = uniform_angles(q.n_angular);
  parallel_for(thetas.size(), [&](std::size_t i) {
    row[i] = integrate_panels(
        [&](double rho) { return std::norm(g(thetas[i], rho)) * std::sin(rho); }, breaks, q.n_tail);
  });
  double mean = 0;
  for (double v : row) mean += v;
  mean /= q.n_angular;
  return std::sqrt(two_pi * mean);
}

}  // namespace cylradon
