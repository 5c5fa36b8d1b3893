#pragma once

// The dual transform
//   R*g(s, t) = (1/pi) sum_{sigma = +-1} int_0^inf g(s + sigma arccos(-t/a), arctan a) dv / (1 + a^2)^{3/2},
// a = sqrt(v^2 + t^2), for even g. It integrates g over the directions whose ellipses pass
// through (s, t), and it is the adjoint of R for the pairings
//   <Rf, g> = int int Rf conj(g) sin(rho) drho dtheta,   <f, h> = int int f conj(h) dt ds.
//
// Mode level: H_n(t) = ((-1)^{|n|} / sqrt(pi)) (Y-^{|n|} G_n^#)(t) with
// G_n^#(w) = G_n(arctan w) / (1 + w^2)^{3/2}.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "cylradon/chebyshev.hpp"
#include "cylradon/errors.hpp"
#include "cylradon/field.hpp"
#include "cylradon/forward.hpp"
#include "cylradon/fourier.hpp"
#include "cylradon/fractional.hpp"
#include "cylradon/geometry.hpp"
#include "cylradon/parallel.hpp"
#include "cylradon/profile.hpp"
#include "cylradon/quadrature.hpp"

namespace cylradon {

using DirectionObserver = std::function<void(const SphereDir&)>;

namespace detail {

/// Breakpoints in u (v = tan u) on [0, pi/2]: uniform eighths plus the scale |t|, where
/// arccos(-t/a) turns from 0 or pi to pi/2.
inline std::vector<double> dual_breaks(double t) {
  std::vector<double> b;
  for (int k = 0; k <= 8; ++k) b.push_back(half_pi * k / 8);
  const double at = std::abs(t);
  if (at > 0)
    for (double c : {0.0625, 0.25, 1.0, 4.0}) b.push_back(std::atan(c * at));
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end(), [](double x, double y) { return std::abs(x - y) < 1e-12; }), b.end());
  return b;
}

}  // namespace detail

/// R*g at p. With v = tan(u) the weight becomes cos(u) / (1 + t^2 cos^2 u)^{3/2} on [0, pi/2].
/// The observer, when set, sees every direction at which g is evaluated.
inline cplx dual_point(const SphereField& g, const CylPoint& p, const QuadratureSpec& q = {},
                       const DirectionObserver& observer = {}) {
  if (g.parity == Parity::odd) throw OddInputError("dual_point: the dual formula assumes an even sphere field");
  const double s = p.s, t = p.t;
  const auto breaks = detail::dual_breaks(t);
  const int nodes = std::max(8, q.n_tail / 2);
  auto integrand = [&](double u) {
    const double v = std::tan(u);
    const double a = std::hypot(v, t);
    const double rho = std::atan(a);
    const double psi = a > 0 ? std::acos(std::clamp(-t / a, -1.0, 1.0)) : half_pi;
    const double c = std::cos(u);
    const double w = c / std::pow(1 + t * t * c * c, 1.5);
    cplx sum{};
    for (double sigma : {1.0, -1.0}) {
      const double theta = s + sigma * psi;
      if (observer) observer(SphereDir(theta, rho));
      sum += g(theta, rho);
    }
    return sum * w;
  };
  return integrate_panels(integrand, breaks, nodes) / pi;
}

/// R*g as a field on the cylinder; for bounded g it decays like 1 / (1 + t^2).
inline CylinderField dual_field(const SphereField& g, const QuadratureSpec& q = {}) {
  CylinderField f;
  f.eval = [g, q](double s, double t) { return dual_point(g, CylPoint(s, t), q); };
  f.parity = Parity::even;
  f.vanishes_at_infinity = true;
  return f;
}

struct DualityPairing {
  cplx sphere_side;    ///< <Rf, g> on the sphere
  cplx cylinder_side;  ///< <f, R*g> on the cylinder
  [[nodiscard]] double gap() const { return std::abs(sphere_side - cylinder_side); }
};

/// Both sides of the duality relation. f must be declared square integrable.
inline DualityPairing duality_pairing(const CylinderField& f, const SphereField& g, const QuadratureSpec& q = {}) {
  if (!f.vanishes_at_infinity) throw TailError("duality_pairing: f must vanish at infinity");
  if (g.parity == Parity::odd) throw OddInputError("duality_pairing: g must be even");
  const int M = q.n_angular;
  const auto angles = uniform_angles(M);

  const std::vector<double> rho_breaks{0.0, pi / 4, half_pi, 3 * pi / 4, pi};
  std::vector<cplx> sph(M), cyl(M);
  parallel_for(static_cast<std::size_t>(M), [&](std::size_t i) {
    const double theta = angles[i];
    sph[i] = integrate_panels(
        [&](double rho) {
          const cplx r = uses_equator(rho) ? radon_equator(f, theta, q) : radon_point(f, SphereDir(theta, rho), q);
          return r * std::conj(g(theta, rho)) * std::sin(rho);
        },
        rho_breaks, q.n_tail);
    const double s = angles[i];
    cyl[i] = integrate_half_line(
        [&](double t) {
          cplx v = f(s, t) * std::conj(dual_point(g, CylPoint(s, t), q));
          if (t > 0) v += f(s, -t) * std::conj(dual_point(g, CylPoint(s, -t), q));
          return v;
        },
        0.0, q);
  });
  DualityPairing out{};
  for (int i = 0; i < M; ++i) {
    out.sphere_side += sph[i];
    out.cylinder_side += cyl[i];
  }
  out.sphere_side *= two_pi / M;
  out.cylinder_side *= two_pi / M;
  return out;
}

inline double duality_gap(const CylinderField& f, const SphereField& g, const QuadratureSpec& q = {}) {
  return duality_pairing(f, g, q).gap();
}

/// G^#(w) = G(arctan w) / (1 + w^2)^{3/2}. A bounded G gives a w^-3 tail; callers that know
/// a different decay (null generators) pass their own descriptor.
inline ModeProfile g_hash(const ModeProfile& G, Tail tail = Tail::exact(3), double origin_exponent = 0.0) {
  return ModeProfile::from_rule(
      [G](double w) { return G(std::atan(w)) / std::pow(1 + w * w, 1.5); }, tail, origin_exponent);
}

/// H_n(t) from G^#. H_n(-t) = (-1)^n H_n(t); t = 0 uses T_{|n|}(0) int_0^inf G^#.
inline cplx dual_mode_forward_hash(const ModeProfile& Gs, int n, double t, const QuadratureSpec& q = {}) {
  const unsigned m = static_cast<unsigned>(std::abs(n));
  const double sign = sign_pow(n);
  if (t < 0) return sign * dual_mode_forward_hash(Gs, n, -t, q);
  if (t == 0) {
    const double T0 = cheb_T(m, 0.0);
    if (T0 == 0) return {};
    return sign * (2 / pi) * T0 * integrate_half_line([&](double w) { return Gs(w); }, 0.0, q);
  }
  return (sign / sqrt_pi) * ups_minus(m, Gs, t, q);
}

/// H_n(t), the n-th circular harmonic of R*g, from the sphere mode G_n.
inline cplx dual_mode_forward(const ModeProfile& G, int n, double t, const QuadratureSpec& q = {}) {
  return dual_mode_forward_hash(g_hash(G), n, t, q);
}

/// G_n(arctan t) from H_n for t > 0: (1 + t^2)^{3/2} times the inverse of Y-^{|n|} applied
/// to (-1)^{|n|} sqrt(pi) H_n. H_n needs a tail descriptor; sampled inputs should carry one.
inline cplx dual_mode_invert(const ModeProfile& H, int n, double t, const QuadratureSpec& q = {}) {
  if (!(t > 0)) throw DomainError("dual_mode_invert: t must be positive");
  const unsigned m = static_cast<unsigned>(std::abs(n));
  const double scale = sign_pow(n) * sqrt_pi;
  const auto g = H.mapped([scale](double, cplx v) { return scale * v; }, H.tail(), H.origin_exponent());
  return std::pow(1 + t * t, 1.5) * invert_ups_minus(m, g, t, q);
}

/// H_n as a rule profile with a t^-2 tail, the decay of R*g for bounded g.
inline ModeProfile dual_mode_profile(const ModeProfile& G, int n, const QuadratureSpec& q = {}) {
  const auto Gs = g_hash(G);
  return ModeProfile::from_rule([Gs, n, q](double t) { return dual_mode_forward_hash(Gs, n, t, q); }, Tail::exact(2),
                                0.0);
}

/// G_n(rho) = sum_k c_k (1 + tan^2 rho)^{3/2} / tan^{|n| - 2k} rho, k < floor(|n|/2).
/// Its G^# is sum_k c_k w^{2k - |n|}, which Y-^{|n|} annihilates; it is unbounded at the
/// pole and at the equator.
inline ModeProfile rstar_nullgen(int n, const std::vector<cplx>& coeffs) {
  const auto terms = nullgen_minus_terms(static_cast<unsigned>(std::abs(n)), coeffs);
  return ModeProfile::from_rule(
      [terms](double rho) {
        const double w = std::tan(rho);
        return std::pow(1 + w * w, 1.5) * terms(w);
      },
      Tail::none(), 0.0, -half_pi, half_pi);
}

/// G^# of rstar_nullgen with its exact descriptor.
inline ModeProfile rstar_nullgen_hash(int n, const std::vector<cplx>& coeffs) {
  return nullgen_minus(static_cast<unsigned>(std::abs(n)), coeffs);
}

struct DualModeConsistency {
  double max_discrepancy = 0.0;
  std::vector<double> per_mode;  ///< index n + N
};

/// Compares the circular harmonics of R*g computed pointwise with dual_mode_forward of
/// the sphere modes of g, on each t of t_grid.
inline DualModeConsistency dual_mode_consistency(const SphereField& g, int N, std::span<const double> t_grid,
                                                 const QuadratureSpec& q = {}) {
  const int M = angular_nodes(N, q);
  const auto angles = uniform_angles(M);
  std::vector<std::vector<cplx>> path_a(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t j) {
    std::vector<cplx> v(M);
    for (int k = 0; k < M; ++k) v[k] = dual_point(g, CylPoint(angles[k], t_grid[j]), q);
    path_a[j] = dft_modes(v, N);
  });
  DualModeConsistency rep;
  rep.per_mode.assign(2 * N + 1, 0.0);
  parallel_for(static_cast<std::size_t>(2 * N + 1), [&](std::size_t idx) {
    const int n = static_cast<int>(idx) - N;
    const auto G = sphere_mode_projection(g, n, q);
    double worst = 0;
    for (std::size_t j = 0; j < t_grid.size(); ++j)
      worst = std::max(worst, std::abs(path_a[j][idx] - dual_mode_forward(G, n, t_grid[j], q)));
    rep.per_mode[idx] = worst;
  });
  for (double d : rep.per_mode) rep.max_discrepancy = std::max(rep.max_discrepancy, d);
  return rep;
}

}  // namespace cylradon
