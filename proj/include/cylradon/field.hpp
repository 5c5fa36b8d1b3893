#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "cylradon/quadrature.hpp"

namespace cylradon {

/// Behaviour under the antipodal map (s, t) -> (s + pi, -t) on the cylinder,
/// or (theta, rho) -> (theta + pi, pi - rho) on the sphere.
enum class Parity { even, odd, mixed, unknown };

/// A function on S^1 x R given by a rule.
struct CylinderField {
  std::function<cplx(double, double)> eval;
  Parity parity = Parity::unknown;
  /// C(s) = lim_{t -> +inf} f(s, t); empty when no such limit is declared.
  std::function<cplx(double)> limit_C;
  /// f -> 0 as |t| -> inf fast enough to be square integrable on the cylinder.
  bool vanishes_at_infinity = false;
  std::optional<double> bound;

  cplx operator()(double s, double t) const { return eval(s, t); }
};

/// A function on S^2 in (theta, rho) coordinates, the equator included.
struct SphereField {
  std::function<cplx(double, double)> eval;
  Parity parity = Parity::unknown;

  cplx operator()(double theta, double rho) const { return eval(theta, rho); }
};

inline Parity combined_parity(Parity a, Parity b) {
  if (a == b && (a == Parity::even || a == Parity::odd)) return a;
  if (a == Parity::unknown || b == Parity::unknown) return Parity::unknown;
  return Parity::mixed;
}

/// alpha f + beta g with the declared attributes carried through.
inline CylinderField linear_combination(cplx alpha, const CylinderField& f, cplx beta, const CylinderField& g) {
  CylinderField h;
  h.eval = [=](double s, double t) { return alpha * f(s, t) + beta * g(s, t); };
  h.parity = combined_parity(f.parity, g.parity);
  h.vanishes_at_infinity = f.vanishes_at_infinity && g.vanishes_at_infinity;
  const bool f_lim = f.limit_C || f.vanishes_at_infinity;
  const bool g_lim = g.limit_C || g.vanishes_at_infinity;
  if (!h.vanishes_at_infinity && f_lim && g_lim) {
    h.limit_C = [=](double s) {
      const cplx cf = f.limit_C ? f.limit_C(s) : cplx{};
      const cplx cg = g.limit_C ? g.limit_C(s) : cplx{};
      return alpha * cf + beta * cg;
    };
  }
  if (f.bound && g.bound) h.bound = std::abs(alpha) * *f.bound + std::abs(beta) * *g.bound;
  return h;
}

/// Values on a (theta, rho) product grid; values[i * rhos.size() + j] = g(thetas[i], rhos[j]).
struct SphereSamples {
  std::vector<double> thetas;
  std::vector<double> rhos;
  std::vector<cplx> values;

  cplx& at(std::size_t i, std::size_t j) { return values[i * rhos.size() + j]; }
  [[nodiscard]] const cplx& at(std::size_t i, std::size_t j) const { return values[i * rhos.size() + j]; }
};

/// Values on an (s, t) product grid; values[i * t.size() + j] = f(s[i], t[j]).
struct CylinderSamples {
  std::vector<double> s;
  std::vector<double> t;
  std::vector<cplx> values;

  cplx& at(std::size_t i, std::size_t j) { return values[i * t.size() + j]; }
  [[nodiscard]] const cplx& at(std::size_t i, std::size_t j) const { return values[i * t.size() + j]; }
};

/// n points 2 pi k / n.
inline std::vector<double> uniform_angles(int n) {
  std::vector<double> a(n);
  for (int k = 0; k < n; ++k) a[k] = two_pi * k / n;
  return a;
}

/// n points evenly spaced on [a, b], both ends included.
inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace cylradon
