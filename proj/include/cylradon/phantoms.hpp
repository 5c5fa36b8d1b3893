#pragma once

// Closed-form test fields with declared parity, decay and (where known) transforms.
//
// Parity rule for the Gaussian modes: t^k e^{-(t/a)^2} cos(n s) is even under
// (s, t) -> (s + pi, -t) iff k and n have the same parity. k = |n| is the smallest
// exponent that is both even-compatible and meets the growth bound |F_n| <= C |t|^{|n|-1}.

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cylradon/field.hpp"
#include "cylradon/quadrature.hpp"

namespace cylradon {

/// e^{-z} I0(z) for z >= 0 without overflow.
inline double scaled_bessel_i0(double z) {
  if (z < 500) return std::exp(-z) * std::cyl_bessel_i(0.0, z);
  const double u = 1.0 / (8.0 * z);
  return (1 + u * (1 + u * (4.5 + u * (37.5 + u * (459.375 + u * 7441.875))))) / std::sqrt(two_pi * z);
}

/// t^k e^{-(t/scale)^2} cos(n s); refuses k whose parity would make the field non-even.
inline CylinderField power_gaussian(int n, int k, double scale = 1.0) {
  if (!(scale > 0)) throw std::invalid_argument("power_gaussian: scale must be positive");
  if (k < 0) throw std::invalid_argument("power_gaussian: exponent must be nonnegative");
  if ((k - n) % 2 != 0) throw std::invalid_argument("power_gaussian: exponent parity would break evenness");
  CylinderField f;
  f.eval = [n, k, scale](double s, double t) {
    const double u = t / scale;
    return cplx(std::pow(t, k) * std::exp(-u * u) * std::cos(n * s), 0.0);
  };
  f.parity = Parity::even;
  f.vanishes_at_infinity = true;
  return f;
}

/// t^{|n|} e^{-(t/scale)^2} cos(n s).
inline CylinderField gaussian_mode(int n, double scale = 1.0) { return power_gaussian(n, std::abs(n), scale); }

/// t e^{-t^2}: odd, annihilated by R.
inline CylinderField odd_phantom() {
  CylinderField f;
  f.eval = [](double, double t) { return cplx(t * std::exp(-t * t), 0.0); };
  f.parity = Parity::odd;
  f.vanishes_at_infinity = true;
  return f;
}

inline CylinderField constant_phantom(cplx c) {
  CylinderField f;
  f.eval = [c](double, double) { return c; };
  f.parity = Parity::even;
  f.limit_C = [c](double) { return c; };
  f.bound = std::abs(c);
  return f;
}

/// sigma(t) C(s) + sigma(-t) C(s + pi) with sigma(t) = (1 + tanh t)/2: even, bounded by
/// sup|C|, tending to C(s) as t -> +inf (and to C(s + pi) as t -> -inf, as evenness forces).
inline CylinderField tail_phantom(std::function<cplx(double)> C) {
  CylinderField f;
  f.eval = [C](double s, double t) {
    const double sp = 0.5 * (1 + std::tanh(t));
    return sp * C(s) + (1 - sp) * C(s + pi);
  };
  f.parity = Parity::even;
  f.limit_C = std::move(C);
  return f;
}

/// t cos s: even, unbounded; Rf = -(tan rho / 2) cos theta.
inline CylinderField tcos_phantom() {
  CylinderField f;
  f.eval = [](double s, double t) { return cplx(t * std::cos(s), 0.0); };
  f.parity = Parity::even;
  return f;
}

/// Smooth bump in |t| supported on a < |t| < b, times cos(n s) with n even: even, and
/// Rf vanishes on the cap tan(rho) <= a.
inline CylinderField shell_phantom(double a, double b, int n = 0) {
  if (!(0 <= a && a < b)) throw std::invalid_argument("shell_phantom: need 0 <= a < b");
  if (n % 2 != 0) throw std::invalid_argument("shell_phantom: odd n would break evenness");
  CylinderField f;
  f.eval = [a, b, n](double s, double t) {
    const double u = std::abs(t);
    if (u <= a || u >= b) return cplx{};
    return cplx(std::exp(-(b - a) / ((u - a) * (b - u))) * std::cos(n * s), 0.0);
  };
  f.parity = Parity::even;
  f.vanishes_at_infinity = true;
  f.bound = 1.0;
  return f;
}

inline SphereField constant_sphere(cplx c) { return {[c](double, double) { return c; }, Parity::even}; }

/// cos(n theta) tan^{|n|}(rho) e^{-tan^2 rho}: even, continuous, zero on the equator.
inline SphereField sphere_gaussian(int n) {
  return {[n](double theta, double rho) {
            const double x = std::tan(rho);
            if (std::abs(x) > 1e8) return cplx{};
            return cplx(std::cos(n * theta) * std::pow(x, std::abs(n)) * std::exp(-x * x), 0.0);
          },
          Parity::even};
}

struct Phantom {
  std::string id;
  std::optional<CylinderField> cylinder;
  std::optional<SphereField> sphere;
  /// Rf(theta, rho) in closed form, when known.
  std::function<cplx(double, double)> radon;
  /// R*g(s, t) in closed form, when known.
  std::function<cplx(double, double)> dual;
  /// Largest |n| with a nonzero angular coefficient.
  int band = 0;
};

namespace detail {
inline bool parse_int(const std::string& s, int& out) {
  if (s.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stoi(s, &used);
  } catch (...) {
    return false;
  }
  return used == s.size();
}
inline bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stod(s, &used);
  } catch (...) {
    return false;
  }
  return used == s.size();
}
}  // namespace detail

/// Phantoms by id: gauss<n>, odd, const:<c>, tail:cos, tail:const, tcos, shell,
/// const-sphere:<c>, sgauss<n>. Throws std::invalid_argument on unknown ids.
inline Phantom phantom_by_id(const std::string& id) {
  Phantom p;
  p.id = id;
  int n = 0;
  double c = 0;
  if (id.rfind("gauss", 0) == 0 && detail::parse_int(id.substr(5), n)) {
    p.cylinder = gaussian_mode(n);
    p.band = std::abs(n);
    if (n == 0)
      p.radon = [](double, double rho) {
        const double x = std::tan(rho);
        if (std::abs(x) > 1e8) return cplx{};
        return cplx(scaled_bessel_i0(x * x / 2), 0.0);
      };
  } else if (id.rfind("sgauss", 0) == 0 && detail::parse_int(id.substr(6), n)) {
    p.sphere = sphere_gaussian(n);
    p.band = std::abs(n);
  } else if (id == "odd") {
    p.cylinder = odd_phantom();
    p.radon = [](double, double) { return cplx{}; };
  } else if (id.rfind("const:", 0) == 0 && detail::parse_double(id.substr(6), c)) {
    p.cylinder = constant_phantom(c);
    p.radon = [c](double, double) { return cplx(c, 0.0); };
  } else if (id.rfind("const-sphere:", 0) == 0 && detail::parse_double(id.substr(13), c)) {
    p.sphere = constant_sphere(c);
    p.dual = [c](double, double t) { return cplx(c * 2 / pi / (1 + t * t), 0.0); };
  } else if (id == "tail:cos") {
    p.cylinder = tail_phantom([](double s) { return cplx(std::cos(s), 0.0); });
    p.band = 1;
  } else if (id == "tail:const") {
    p.cylinder = tail_phantom([](double) { return cplx(1.0, 0.0); });
    p.radon = [](double, double) { return cplx(1.0, 0.0); };
  } else if (id == "shell") {
    p.cylinder = shell_phantom(1.5, 3.0, 2);
    p.band = 2;
  } else if (id == "tcos") {
    p.cylinder = tcos_phantom();
    p.band = 1;
    p.radon = [](double theta, double rho) { return cplx(-std::tan(rho) / 2 * std::cos(theta), 0.0); };
  } else {
    throw std::invalid_argument("unknown phantom id '" + id + "'");
  }
  return p;
}

/// A representative id for each phantom family.
inline std::vector<std::string> phantom_catalog() {
  return {"gauss0", "gauss1", "gauss2", "gauss3", "odd",   "const:2.5", "tail:cos",
          "tail:const", "tcos", "shell", "const-sphere:1", "sgauss0", "sgauss1", "sgauss2"};
}

}  // namespace cylradon
