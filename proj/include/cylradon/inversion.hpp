#pragma once

// Mode-by-mode inversion of R:
//   F_n(t) = (-1)^{|n|} d/dt J(t),  J(tau) = int_0^tau G_n(arctan x) T_{|n|}(tau/x) x / sqrt(tau^2 - x^2) dx.
// With x = tau sin(phi), J(tau) = tau int_0^{pi/2} G_n(arctan(tau sin phi)) T_{|n|}(1/sin phi) sin(phi) dphi.
// T_{|n|}(1/sin phi) grows like (2/phi)^{|n|}; the growth bound on F_n makes the product bounded,
// but data that misses that bound (interpolation error near the pole, noise) does not cancel.
// The inner part x < tau/8 is integrated on geometric panels shrinking by 4 down to phi ~ 1e-9,
// and a dominant innermost panel is reported as SingularityError.
//
// The outer derivative uses a one-sided backward stencil, so evaluating at height t reads
// G_n only on [0, arctan t].

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include "cylradon/chebyshev.hpp"
#include "cylradon/errors.hpp"
#include "cylradon/field.hpp"
#include "cylradon/fourier.hpp"
#include "cylradon/parallel.hpp"
#include "cylradon/profile.hpp"
#include "cylradon/quadrature.hpp"

namespace cylradon {

/// Relative amplitude below which a mode is treated as absent.
inline constexpr double mode_noise_floor = 1e-10;

struct GrowthReport {
  bool ok = true;
  std::vector<double> constants;  ///< C_n, index n + N
};

/// Checks |F_n(t)| <= C_n |t|^{max(|n| - 1, 0)} on the samples with 0 < t < eps and
/// fits the smallest such C_n. A mode with |n| >= 2 fails when F_n(0) != 0 or when the
/// local exponent between the two smallest samples falls short of |n| - 1. Modes whose
/// amplitude on (0, eps) is below mode_noise_floor times the largest one are not tested.
inline GrowthReport growth_check(const ModeSet& ms, double eps) {
  GrowthReport rep;
  rep.constants.assign(2 * ms.N + 1, 0.0);
  std::vector<double> scales(2 * ms.N + 1, 0.0);
  std::vector<std::vector<double>> probes(2 * ms.N + 1);
  for (int n = -ms.N; n <= ms.N; ++n) {
    const auto& F = ms[n];
    auto& ts = probes[n + ms.N];
    for (double t : F.grid())
      if (t > 0 && t < eps) ts.push_back(t);
    if (ts.size() < 2) ts = linspace(eps / 64, eps * (1 - 1.0 / 64), 16);
    const int k = std::max(std::abs(n) - 1, 0);
    double C = 0;
    for (double t : ts) {
      const double v = std::abs(F(t));
      scales[n + ms.N] = std::max(scales[n + ms.N], v);
      C = std::max(C, v / std::pow(t, k));
    }
    rep.constants[n + ms.N] = C;
    if (!std::isfinite(C)) rep.ok = false;
  }
  const double scale_max = *std::max_element(scales.begin(), scales.end());
  for (int n = -ms.N; n <= ms.N; ++n) {
    const auto& F = ms[n];
    const auto& ts = probes[n + ms.N];
    const int k = std::max(std::abs(n) - 1, 0);
    const double scale = scales[n + ms.N];
    if (k == 0 || scale == 0 || scale <= mode_noise_floor * scale_max) continue;
    const double floor = 1e-12 * scale + 1e-300;
    if (std::abs(F(0.0)) > 1e-8 * scale + floor) {
      rep.ok = false;
      continue;
    }
    const double a = std::abs(F(ts[0])), b = std::abs(F(ts[1]));
    if (a > floor && b > floor) {
      const double p = std::log(b / a) / std::log(ts[1] / ts[0]);
      if (p < k - 0.1) rep.ok = false;
    }
  }
  return rep;
}

/// Counts reads of a profile and those beyond a limit.
struct ReadRecorder {
  double limit = std::numeric_limits<double>::infinity();
  std::atomic<long> reads{0};
  std::atomic<long> outside{0};

  explicit ReadRecorder(double limit_) : limit(limit_) {}

  ModeProfile wrap(const ModeProfile& p) {
    return p.observed([this](double r) {
      ++reads;
      if (r > limit || r < 0) ++outside;
    });
  }
};

namespace detail {

inline constexpr double inner_split = 0.125;  // x = tau / 8
inline constexpr double inner_ratio = 0.25;
inline constexpr double innermost_phi = 1e-9;

/// J(tau) / tau, accumulated panel by panel from phi = pi/2 inwards.
inline cplx coefficient_integral(const ModeProfile& G, unsigned m, double tau, const QuadratureSpec& q) {
  auto integrand = [&](double phi) {
    const double s = std::sin(phi);
    return G(std::atan(tau * s)) * (cheb_T(m, 1.0 / s) * s);
  };
  const double phi0 = std::asin(inner_split);
  const int outer_nodes = std::max(8, q.n_angular / 4);
  cplx total = integrate_gl(integrand, phi0, half_pi, outer_nodes);
  double mass = std::abs(total);
  cplx innermost{};
  const int inner_nodes = std::max(8, q.n_tail / 2);
  for (double hi = phi0; hi > innermost_phi; hi *= inner_ratio) {
    innermost = integrate_gl(integrand, hi * inner_ratio, hi, inner_nodes);
    total += innermost;
    mass += std::abs(innermost);
  }
  if (std::abs(innermost) > q.singular_tol * mass + q.singular_abs) {
    std::ostringstream os;
    os << "mode_invert: T_" << m << " growth near x = 0 is not cancelled by the data (innermost panel "
       << std::abs(innermost) << " of " << mass << ")";
    throw SingularityError(os.str());
  }
  return total;
}

}  // namespace detail

/// F_n(t) from the sphere mode G_n (a profile in rho). Reads G_n only on [0, arctan t].
inline cplx mode_invert(const ModeProfile& G, int n, double t, const QuadratureSpec& q = {}) {
  if (!(t > 0)) throw DomainError("mode_invert: t must be positive");
  const double h = q.fd_step * std::max(t, 1.0);
  if (!(t - 4 * h > 0)) throw DomainError("mode_invert: t too close to 0 for the difference stencil");
  const unsigned m = static_cast<unsigned>(std::abs(n));
  auto J = [&](double tau) { return tau * detail::coefficient_integral(G, m, tau, q); };
  return static_cast<double>(sign_pow(n)) * derivative_backward(J, t, h);
}

struct Reconstruction {
  CylinderSamples field;  ///< even part of f on (s, t)
  ModeSet sphere_modes;   ///< G_n used for the inversion
  std::vector<int> inverted_modes;
};

/// Inverts the given sphere modes at each t of t_grid (positive) and synthesizes the even
/// part of f on s_count uniform angles. Modes whose sampled amplitude is below the noise
/// floor relative to the largest are skipped.
inline Reconstruction reconstruct_modes(ModeSet sphere_modes, std::span<const double> t_grid,
                                        const QuadratureSpec& q = {}, int s_count = 0) {
  if (t_grid.empty()) throw std::invalid_argument("reconstruct: empty t grid");
  const int N = sphere_modes.N;
  Reconstruction out;
  out.sphere_modes = std::move(sphere_modes);

  std::vector<double> amp(2 * N + 1, 0.0);
  double amp_max = 0;
  for (int n = -N; n <= N; ++n) {
    for (const auto& v : out.sphere_modes[n].values()) amp[n + N] = std::max(amp[n + N], std::abs(v));
    amp_max = std::max(amp_max, amp[n + N]);
  }
  for (int n = -N; n <= N; ++n)
    if (amp[n + N] > mode_noise_floor * amp_max && amp[n + N] > 0) out.inverted_modes.push_back(n);

  const std::size_t nt = t_grid.size();
  std::vector<std::vector<cplx>> F(2 * N + 1, std::vector<cplx>(nt));
  const std::size_t jobs = out.inverted_modes.size() * nt;
  parallel_for(jobs, [&](std::size_t job) {
    const int n = out.inverted_modes[job / nt];
    const std::size_t j = job % nt;
    F[n + N][j] = mode_invert(out.sphere_modes[n], n, t_grid[j], q);
  });

  if (s_count <= 0) s_count = std::max(16, 4 * N);
  out.field.s = uniform_angles(s_count);
  out.field.t.assign(t_grid.begin(), t_grid.end());
  out.field.values.assign(s_count * nt, cplx{});
  for (int i = 0; i < s_count; ++i)
    for (std::size_t j = 0; j < nt; ++j) {
      cplx sum{};
      for (int n : out.inverted_modes) sum += F[n + N][j] * std::polar(1.0, n * out.field.s[i]);
      out.field.at(i, j) = sum;
    }
  return out;
}

/// Recovers the even part of f from Rf sampled on rho in [0, arctan(1.25 max t)] with
/// q.n_rho nodes.
inline Reconstruction reconstruct(const SphereField& Rf, int N, std::span<const double> t_grid,
                                  const QuadratureSpec& q = {}, int s_count = 0) {
  if (t_grid.empty()) throw std::invalid_argument("reconstruct: empty t grid");
  const double t_max = *std::max_element(t_grid.begin(), t_grid.end());
  const auto rho_grid = linspace(0.0, std::atan(1.25 * t_max), q.n_rho);
  return reconstruct_modes(analyze_sph(Rf, N, rho_grid, q), t_grid, q, s_count);
}

struct SupportVerdict {
  bool vanishes = true;
  double max_abs = 0.0;    ///< max |f| over the probed (s, t)
  long outside_reads = 0;  ///< reads of Rf with rho > arctan t0
};

/// Reconstructs f(., t) for t in (0, t0] from Rf restricted to the cap rho <= arctan t0
/// and reports whether it vanishes to within tol. Rf is never evaluated off the cap.
inline SupportVerdict support_check(const SphereField& Rf, double t0, double tol, const QuadratureSpec& q = {},
                                    int max_mode = 8) {
  if (!(t0 > 0)) throw DomainError("support_check: t0 must be positive");
  const double cap = std::atan(t0);
  std::atomic<long> outside{0};
  SphereField probe{[&](double theta, double rho) {
                      if (rho > cap) ++outside;
                      return Rf(theta, rho);
                    },
                    Rf.parity};
  const auto rho_grid = linspace(0.0, cap, q.n_rho);
  const auto modes = analyze_sph(probe, max_mode, rho_grid, q);
  const double h = q.fd_step * std::max(t0, 1.0);
  const auto ts = linspace(std::max(t0 / 8, 5 * h), t0, 8);
  const auto angles = uniform_angles(std::max(16, 4 * max_mode));
  SupportVerdict v;
  std::vector<std::vector<cplx>> F(2 * max_mode + 1, std::vector<cplx>(ts.size()));
  for (int n = -max_mode; n <= max_mode; ++n)
    for (std::size_t j = 0; j < ts.size(); ++j) F[n + max_mode][j] = mode_invert(modes[n], n, ts[j], q);
  for (double s : angles)
    for (std::size_t j = 0; j < ts.size(); ++j) {
      cplx sum{};
      for (int n = -max_mode; n <= max_mode; ++n) sum += F[n + max_mode][j] * std::polar(1.0, n * s);
      v.max_abs = std::max(v.max_abs, std::abs(sum));
    }
  v.vanishes = v.max_abs < tol;
  v.outside_reads = outside.load();
  return v;
}

}  // namespace cylradon
