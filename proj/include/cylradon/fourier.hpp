#pragma once

// Circular harmonics: f(s, t) = sum_n F_n(t) e^{ins} on the cylinder, g(theta, rho) =
// sum_n G_n(rho) e^{in theta} on the sphere, and the mode-level forward map
// G_n(arctan x) = ((-1)^{|n|} / sqrt(pi)) (Y+^{|n|} F_n)(x).

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "cylradon/field.hpp"
#include "cylradon/forward.hpp"
#include "cylradon/fractional.hpp"
#include "cylradon/parallel.hpp"
#include "cylradon/profile.hpp"
#include "cylradon/quadrature.hpp"

namespace cylradon {

/// Which variable the profiles run over: t for cylinder modes F_n and dual modes H_n,
/// rho for sphere modes G_n.
enum class Side { cylinder, sphere, dual };

/// Profiles for n in [-N, N].
struct ModeSet {
  Side side = Side::cylinder;
  int N = 0;
  std::vector<ModeProfile> profiles;

  ModeSet() = default;
  ModeSet(Side side_, int N_) : side(side_), N(N_), profiles(2 * N_ + 1) {
    if (N_ < 0) throw std::invalid_argument("ModeSet: N must be nonnegative");
  }

  [[nodiscard]] const ModeProfile& operator[](int n) const { return profiles.at(index(n)); }
  ModeProfile& operator[](int n) { return profiles.at(index(n)); }

 private:
  [[nodiscard]] std::size_t index(int n) const {
    if (std::abs(n) > N) throw std::out_of_range("ModeSet: mode index beyond N");
    return static_cast<std::size_t>(n + N);
  }
};

inline int sign_pow(int n) { return n % 2 == 0 ? 1 : -1; }

/// Angular node count: a power of two, at least 4N and at least n_angular.
inline int angular_nodes(int N, const QuadratureSpec& q) {
  return static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::max({4 * N, q.n_angular, 4}))));
}

/// Coefficients (1/M) sum_k v_k e^{-i n a_k} for n in [-N, N] from M samples at a_k = a_0 + 2 pi k / M.
inline std::vector<cplx> dft_modes(std::span<const cplx> v, int N, double a0 = 0.0) {
  const std::size_t M = v.size();
  std::vector<cplx> out(2 * N + 1);
  for (int n = -N; n <= N; ++n) {
    cplx sum{};
    for (std::size_t k = 0; k < M; ++k) sum += v[k] * std::polar(1.0, -n * (a0 + two_pi * k / M));
    out[n + N] = sum / static_cast<double>(M);
  }
  return out;
}

namespace detail {

template <class Eval>
std::vector<std::vector<cplx>> analyze_rule(Eval eval, int N, std::span<const double> radial, int M) {
  std::vector<std::vector<cplx>> coeffs(2 * N + 1, std::vector<cplx>(radial.size()));
  const auto angles = uniform_angles(M);
  parallel_for(radial.size(), [&](std::size_t j) {
    std::vector<cplx> v(M);
    for (int k = 0; k < M; ++k) v[k] = eval(angles[k], radial[j]);
    const auto c = dft_modes(v, N);
    for (int n = 0; n <= 2 * N; ++n) coeffs[n][j] = c[n];
  });
  return coeffs;
}

inline void check_uniform(std::span<const double> angles, int N) {
  const std::size_t M = angles.size();
  if (M < static_cast<std::size_t>(2 * N + 1)) throw std::invalid_argument("angular grid too coarse for N modes");
  for (std::size_t k = 0; k < M; ++k)
    if (std::abs(angles[k] - (angles[0] + two_pi * k / M)) > 1e-9)
      throw std::invalid_argument("angular grid must be uniform over a full period");
}

}  // namespace detail

/// Cylinder modes F_n on t_grid (nonnegative, increasing). Even fields get parity-reflected
/// splines F_n(-t) = (-1)^n F_n(t); fields vanishing at infinity get a zero tail.
inline ModeSet analyze_cyl(const CylinderField& f, int N, std::span<const double> t_grid, const QuadratureSpec& q = {}) {
  const int M = angular_nodes(N, q);
  const auto coeffs = detail::analyze_rule([&](double s, double t) { return f(s, t); }, N, t_grid, M);
  ModeSet ms(Side::cylinder, N);
  const std::vector<double> grid(t_grid.begin(), t_grid.end());
  for (int n = -N; n <= N; ++n) {
    std::optional<int> reflect;
    if (f.parity == Parity::even) reflect = sign_pow(n);
    ms[n] = ModeProfile::from_samples(grid, coeffs[n + N], f.vanishes_at_infinity ? Tail::power(INFINITY) : Tail::none(),
                                      reflect);
  }
  return ms;
}

/// Sphere modes G_n on rho_grid. G_n(-rho) = (-1)^n G_n(rho) holds for every function on the
/// sphere, so the splines are always reflected through the pole.
inline ModeSet analyze_sph(const SphereField& g, int N, std::span<const double> rho_grid, const QuadratureSpec& q = {}) {
  const int M = angular_nodes(N, q);
  const auto coeffs = detail::analyze_rule([&](double th, double rho) { return g(th, rho); }, N, rho_grid, M);
  ModeSet ms(Side::sphere, N);
  const std::vector<double> grid(rho_grid.begin(), rho_grid.end());
  for (int n = -N; n <= N; ++n) ms[n] = ModeProfile::from_samples(grid, coeffs[n + N], Tail::none(), sign_pow(n));
  return ms;
}

/// Sphere modes from samples on a uniform theta grid.
inline ModeSet analyze_sph(const SphereSamples& g, int N) {
  detail::check_uniform(g.thetas, N);
  const std::size_t M = g.thetas.size();
  std::vector<std::vector<cplx>> coeffs(2 * N + 1, std::vector<cplx>(g.rhos.size()));
  for (std::size_t j = 0; j < g.rhos.size(); ++j) {
    std::vector<cplx> v(M);
    for (std::size_t k = 0; k < M; ++k) v[k] = g.at(k, j);
    const auto c = dft_modes(v, N, g.thetas[0]);
    for (int n = 0; n <= 2 * N; ++n) coeffs[n][j] = c[n];
  }
  ModeSet ms(Side::sphere, N);
  for (int n = -N; n <= N; ++n) ms[n] = ModeProfile::from_samples(g.rhos, coeffs[n + N], Tail::none(), sign_pow(n));
  return ms;
}

/// Cylinder (or dual-side) modes from samples on a uniform s grid; `tail` extends them past the last t.
inline ModeSet analyze_cyl(const CylinderSamples& f, int N, Parity parity = Parity::unknown, Tail tail = Tail::none(),
                           Side side = Side::cylinder) {
  detail::check_uniform(f.s, N);
  const std::size_t M = f.s.size();
  std::vector<std::vector<cplx>> coeffs(2 * N + 1, std::vector<cplx>(f.t.size()));
  for (std::size_t j = 0; j < f.t.size(); ++j) {
    std::vector<cplx> v(M);
    for (std::size_t k = 0; k < M; ++k) v[k] = f.at(k, j);
    const auto c = dft_modes(v, N, f.s[0]);
    for (int n = 0; n <= 2 * N; ++n) coeffs[n][j] = c[n];
  }
  ModeSet ms(side, N);
  for (int n = -N; n <= N; ++n) {
    std::optional<int> reflect;
    if (parity == Parity::even) reflect = sign_pow(n);
    ms[n] = ModeProfile::from_samples(f.t, coeffs[n + N], tail, reflect);
  }
  return ms;
}

/// F_n as a rule: t -> (1/M) sum_k f(s_k, t) e^{-i n s_k}.
inline ModeProfile mode_projection(const CylinderField& f, int n, const QuadratureSpec& q = {}) {
  const int M = angular_nodes(std::abs(n), q);
  return ModeProfile::from_rule(
      [f, n, M](double t) { return periodic_mean([&](double s) { return f(s, t) * std::polar(1.0, -n * s); }, M); },
      f.vanishes_at_infinity ? Tail::exact() : Tail::none(), 0.0);
}

/// G_n as a rule: rho -> (1/M) sum_k g(theta_k, rho) e^{-i n theta_k}.
inline ModeProfile sphere_mode_projection(const SphereField& g, int n, const QuadratureSpec& q = {}) {
  const int M = angular_nodes(std::abs(n), q);
  return ModeProfile::from_rule(
      [g, n, M](double rho) {
        return periodic_mean([&](double th) { return g(th, rho) * std::polar(1.0, -n * th); }, M);
      },
      Tail::none(), 0.0, -pi, pi);
}

/// sum_{|n| <= N} P_n(radial) e^{i n angle}.
inline cplx synthesize(const ModeSet& ms, double angle, double radial) {
  cplx sum{};
  for (int n = -ms.N; n <= ms.N; ++n) sum += ms[n](radial) * std::polar(1.0, n * angle);
  return sum;
}

/// G_n(arctan x) from the mode F_n of an even field.
inline cplx mode_forward(const ModeProfile& F, int n, double x, const QuadratureSpec& q = {}) {
  return (sign_pow(std::abs(n)) / sqrt_pi) * ups_plus(static_cast<unsigned>(std::abs(n)), F, x, q);
}

struct ModeConsistency {
  double max_discrepancy = 0.0;
  std::vector<double> per_mode;  ///< index n + N
};

/// (f(s, t) + f(s + pi, -t)) / 2; R sees only this part.
inline CylinderField even_part(const CylinderField& f) {
  if (f.parity == Parity::even) return f;
  CylinderField e = f;
  e.eval = [f](double s, double t) { return 0.5 * (f(s, t) + f(s + pi, -t)); };
  e.parity = Parity::even;
  return e;
}

/// Compares sphere modes of R f (angular DFT of radon_grid at rho = arctan x) with
/// mode_forward of the cylinder modes of the even part of f, node by node.
inline ModeConsistency mode_consistency(const CylinderField& f_in, int N, std::span<const double> x_grid,
                                        const QuadratureSpec& q = {}) {
  const CylinderField f = even_part(f_in);
  const int M = angular_nodes(N, q);
  const auto thetas = uniform_angles(M);
  std::vector<double> rhos;
  for (double x : x_grid) rhos.push_back(std::atan(x));
  const auto samples = radon_grid(f, thetas, rhos, q);
  ModeConsistency rep;
  rep.per_mode.assign(2 * N + 1, 0.0);
  std::vector<std::vector<cplx>> path_a(x_grid.size());
  for (std::size_t j = 0; j < x_grid.size(); ++j) {
    std::vector<cplx> v(M);
    for (int k = 0; k < M; ++k) v[k] = samples.at(k, j);
    path_a[j] = dft_modes(v, N);
  }
  parallel_for(static_cast<std::size_t>(2 * N + 1), [&](std::size_t idx) {
    const int n = static_cast<int>(idx) - N;
    const auto F = mode_projection(f, n, q);
    double worst = 0;
    for (std::size_t j = 0; j < x_grid.size(); ++j)
      worst = std::max(worst, std::abs(path_a[j][idx] - mode_forward(F, n, x_grid[j], q)));
    rep.per_mode[idx] = worst;
  });
  for (double d : rep.per_mode) rep.max_discrepancy = std::max(rep.max_discrepancy, d);
  return rep;
}

}  // namespace cylradon
