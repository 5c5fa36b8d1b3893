#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "cylradon/errors.hpp"
#include "cylradon/quadrature.hpp"

namespace cylradon {

inline constexpr double equator_tol = 1e-12;

/// Angle reduced to [0, 2pi).
inline double normalize_angle(double a) {
  double r = std::fmod(a, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

/// Point (e^{is}, t) on the unit cylinder.
struct CylPoint {
  double s = 0.0;
  double t = 0.0;

  CylPoint() = default;
  CylPoint(double s_, double t_) : s(normalize_angle(s_)), t(t_) {
    if (!std::isfinite(t)) throw std::invalid_argument("CylPoint: t must be finite");
  }
};

/// Unit normal zeta(theta, rho) = (cos theta sin rho, sin theta sin rho, cos rho).
struct SphereDir {
  double theta = 0.0;
  double rho = 0.0;

  SphereDir() = default;
  SphereDir(double theta_, double rho_) : theta(normalize_angle(theta_)), rho(rho_) {
    if (!(rho >= 0.0 && rho <= pi)) throw std::invalid_argument("SphereDir: rho must lie in [0, pi]");
  }

  [[nodiscard]] bool on_equator() const { return std::abs(rho - half_pi) <= equator_tol; }
};

/// Membership in Xi = [0, 2pi) x [0, pi] minus the equator.
inline bool in_xi(const SphereDir& d) { return !d.on_equator(); }

inline std::array<double, 3> normal_vector(const SphereDir& d) {
  const double sr = std::sin(d.rho);
  return {std::cos(d.theta) * sr, std::sin(d.theta) * sr, std::cos(d.rho)};
}

inline std::array<double, 3> embed(const CylPoint& p) { return {std::cos(p.s), std::sin(p.s), p.t}; }

/// Point of E_zeta above angle s: (e^{is}, -tan(rho) cos(theta - s)).
inline CylPoint ellipse_point(const SphereDir& d, double s) {
  if (d.on_equator()) throw EquatorUndefined("ellipse_point: E_zeta is a pair of lines on the equator");
  return {s, -std::tan(d.rho) * std::cos(d.theta - s)};
}

/// <zeta(d), embed(p)>; zero exactly on E_zeta.
inline double incidence(const SphereDir& d, const CylPoint& p) {
  const auto z = normal_vector(d);
  const auto x = embed(p);
  return z[0] * x[0] + z[1] * x[1] + z[2] * x[2];
}

}  // namespace cylradon
