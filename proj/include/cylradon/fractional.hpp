#pragma once

// Chebyshev fractional integrals on the half-line and their inverses.
//
//   ups_plus   (Y+^m f)(r)  = (2/sqrt(pi)) int_0^r T_m(t/r) f(t) / sqrt(r^2 - t^2) dt
//   ups_minus  (Y-^m f)(t)  = (2/sqrt(pi)) int_t^inf T_m(t/r) f(r) r / sqrt(r^2 - t^2) dr
//   ups_minus_star (Y*^m g)(t) = (2t/sqrt(pi)) int_t^inf g(r) T_m(r/t) / (r sqrt(r^2 - t^2)) dr
//   i_half = Y-^0,  d_half phi = -(1/2) d/dt [t i_half(t^-2 phi)]
//
// Inverse square-root endpoints are removed by substitution: t = r sin(phi) for Y+,
// r = sqrt(t^2 + w^2) for the right-sided operators (dr r / sqrt(r^2 - t^2) = dw).

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cylradon/chebyshev.hpp"
#include "cylradon/errors.hpp"
#include "cylradon/profile.hpp"
#include "cylradon/quadrature.hpp"

namespace cylradon {

namespace detail {

inline void require_positive(double t, const char* op) {
  if (!(t > 0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << op << ": argument must be positive and finite, got " << t;
    throw DomainError(os.str());
  }
}

template <class T>
void require_tail(const RadialProfile<T>& f, const char* op) {
  if (!f.tail().present() || std::isfinite(f.coverage_end()))
    throw TailError(std::string(op) + ": profile has no tail descriptor for the half-line integral");
}

/// Extra w-breakpoints for r = sqrt(t^2 + w^2): spline-to-tail knots and the scale t.
template <class T>
std::vector<double> w_knots(const RadialProfile<T>& f, double t) {
  std::vector<double> out;
  for (double k : f.knots())
    if (k > t) out.push_back(std::sqrt(k * k - t * t));
  for (double s : {0.25, 1.0}) out.push_back(s * t);
  return out;
}

/// Richardson step for the outer derivative; throws when the stencil reaches t <= 0
/// or the t^-2 weight at the lowest stencil point exceeds the configured bound.
inline double fd_step_checked(double t, const QuadratureSpec& q, double reach, const char* op) {
  require_positive(t, op);
  const double h = q.fd_step * std::max(t, 1.0);
  const double lowest = t - reach * h;
  if (!(lowest > 0) || 1.0 / (lowest * lowest) > q.max_amplification) {
    std::ostringstream os;
    os << op << ": t = " << t << " too close to 0 for step " << h;
    throw DomainError(os.str());
  }
  return h;
}

}  // namespace detail

template <class T>
T ups_plus(unsigned m, const RadialProfile<T>& f, double r, const QuadratureSpec& q = {}) {
  if (!(r >= 0) || !std::isfinite(r)) throw DomainError("ups_plus: r must be nonnegative");
  if (r > f.coverage_end()) throw DomainError("ups_plus: r beyond the profile's coverage");
  const int panels = 4;
  const int nodes = std::max(1, q.n_angular / panels);
  T sum{};
  for (int p = 0; p < panels; ++p) {
    const double a = half_pi * p / panels;
    const double b = half_pi * (p + 1) / panels;
    sum += integrate_gl(
        [&](double phi) {
          const double s = std::sin(phi);
          return cheb_T(m, s) * f(r * s);
        },
        a, b, nodes);
  }
  return sum * (2.0 / sqrt_pi);
}

template <class T>
T ups_minus(unsigned m, const RadialProfile<T>& f, double t, const QuadratureSpec& q = {}) {
  detail::require_positive(t, "ups_minus");
  detail::require_tail(f, "ups_minus");
  const auto knots = detail::w_knots(f, t);
  const T sum = integrate_half_line(
      [&](double w) {
        const double r = std::hypot(t, w);
        return cheb_T(m, t / r) * f(r);
      },
      0.0, q, knots);
  return sum * (2.0 / sqrt_pi);
}

template <class T>
T ups_minus_star(unsigned m, const RadialProfile<T>& g, double t, const QuadratureSpec& q = {}) {
  detail::require_positive(t, "ups_minus_star");
  detail::require_tail(g, "ups_minus_star");
  const auto knots = detail::w_knots(g, t);
  const T sum = integrate_half_line(
      [&](double w) {
        const double r2 = t * t + w * w;
        const double r = std::sqrt(r2);
        return g(r) * (cheb_T(m, r / t) / r2);
      },
      0.0, q, knots);
  return sum * (2.0 * t / sqrt_pi);
}

template <class T>
T i_half(const RadialProfile<T>& f, double t, const QuadratureSpec& q = {}) {
  return ups_minus(0, f, t, q);
}

template <class T>
T d_half(const RadialProfile<T>& phi, double t, const QuadratureSpec& q = {}) {
  const double h = detail::fd_step_checked(t, q, 2.0, "d_half");
  const auto psi = phi.mapped([](double r, T v) { return v / (r * r); },
                              Tail::exact(phi.tail().decay + 2), phi.origin_exponent() - 2);
  auto F = [&](double tau) { return tau * i_half(psi, tau, q); };
  return -0.5 * derivative_central(F, t, h);
}

/// Recovers f(t) from g = Y-^m f. m = 0 is d_half; m = 1 uses Y-^1 f = t i_half(f / t);
/// m >= 2 is -(1/2) d/dt (Y*^m g)(t).
template <class T>
T invert_ups_minus(unsigned m, const RadialProfile<T>& g, double t, const QuadratureSpec& q = {}) {
  if (m == 0) return d_half(g, t, q);
  if (m == 1) {
    const auto g_over_t = g.mapped([](double r, T v) { return v / r; }, Tail::exact(g.tail().decay + 1),
                                   g.origin_exponent() - 1);
    return t * d_half(g_over_t, t, q);
  }
  const double h = detail::fd_step_checked(t, q, 2.0, "invert_ups_minus");
  auto F = [&](double tau) { return ups_minus_star(m, g, tau, q); };
  return -0.5 * derivative_central(F, t, h);
}

/// Value at q.refined() with the disagreement against q as the error estimate;
/// converged is false when that disagreement exceeds q.tail_tol.
template <class Op>
auto refinement_estimate(Op op, const QuadratureSpec& q) {
  const auto coarse = op(q);
  const auto fine = op(q.refined());
  using V = std::decay_t<decltype(fine)>;
  Estimate<V> e;
  e.value = fine;
  e.error = magnitude(fine - coarse);
  e.converged = e.error <= q.tail_tol;
  return e;
}

template <class T>
Estimate<T> ups_plus_estimate(unsigned m, const RadialProfile<T>& f, double r, const QuadratureSpec& q = {}) {
  return refinement_estimate([&](const QuadratureSpec& s) { return ups_plus(m, f, r, s); }, q);
}

template <class T>
Estimate<T> ups_minus_estimate(unsigned m, const RadialProfile<T>& f, double t, const QuadratureSpec& q = {}) {
  return refinement_estimate([&](const QuadratureSpec& s) { return ups_minus(m, f, t, s); }, q);
}

/// int_a^inf |f| t^-eta dt < inf with eta = m mod 2, judged from the tail decay.
template <class T>
bool check_conv_minus(unsigned m, const RadialProfile<T>& f) {
  if (!f.tail().present()) return false;
  const double eta = m % 2;
  return f.tail().decay + eta > 1.0;
}

/// int_0^b t^eta |f| dt < inf with eta = m mod 2, judged from the origin exponent.
template <class T>
bool check_conv_plus(unsigned m, const RadialProfile<T>& f) {
  const double eta = m % 2;
  return f.origin_exponent() + eta > -1.0;
}

/// Finite sum of powers sum_i c_i t^{e_i} with exact exponents.
template <class T>
struct PowerSum {
  std::vector<std::pair<int, T>> terms;

  T operator()(double t) const {
    T sum{};
    for (const auto& [e, c] : terms)
      if (c != T{}) sum += c * std::pow(t, e);
    return sum;
  }

  [[nodiscard]] bool is_zero() const {
    for (const auto& term : terms)
      if (term.second != T{}) return false;
    return true;
  }

  [[nodiscard]] int min_exponent() const {
    int e = std::numeric_limits<int>::max();
    for (const auto& [k, c] : terms)
      if (c != T{}) e = std::min(e, k);
    return e;
  }

  [[nodiscard]] int max_exponent() const {
    int e = std::numeric_limits<int>::min();
    for (const auto& [k, c] : terms)
      if (c != T{}) e = std::max(e, k);
    return e;
  }

  /// Rule profile on the half-line; tail decay and origin exponent read off the exponents.
  [[nodiscard]] RadialProfile<T> profile() const {
    if (is_zero()) return RadialProfile<T>::zero();
    auto self = *this;
    return RadialProfile<T>::from_rule([self](double t) { return self(t); }, Tail::exact(-max_exponent()),
                                       min_exponent());
  }
};

template <class T>
PowerSum<T> nullgen_minus_terms(unsigned m, const std::vector<T>& coeffs) {
  if (m < 2) throw NullSpaceEmpty("Y-^m is injective for m < 2");
  const std::size_t M = m / 2;
  if (coeffs.size() != M) throw std::invalid_argument("nullgen_minus: expected floor(m/2) coefficients");
  PowerSum<T> s;
  for (std::size_t k = 0; k < M; ++k) s.terms.emplace_back(static_cast<int>(2 * k) - static_cast<int>(m), coeffs[k]);
  return s;
}

template <class T>
PowerSum<T> nullgen_plus_terms(unsigned m, const std::vector<T>& coeffs) {
  if (m < 2) throw NullSpaceEmpty("Y+^m is injective for m < 2");
  const std::size_t M = m / 2;
  if (coeffs.size() != M) throw std::invalid_argument("nullgen_plus: expected floor(m/2) coefficients");
  PowerSum<T> s;
  for (std::size_t j = 1; j <= M; ++j) s.terms.emplace_back(static_cast<int>(m) - static_cast<int>(2 * j), coeffs[j - 1]);
  return s;
}

/// sum_{k<M} c_k t^{2k-m}, M = floor(m/2): annihilated by Y-^m.
template <class T>
RadialProfile<T> nullgen_minus(unsigned m, const std::vector<T>& coeffs) {
  return nullgen_minus_terms(m, coeffs).profile();
}

/// sum_{j=1..M} c_j t^{m-2j}, M = floor(m/2): annihilated by Y+^m.
template <class T>
RadialProfile<T> nullgen_plus(unsigned m, const std::vector<T>& coeffs) {
  return nullgen_plus_terms(m, coeffs).profile();
}

}  // namespace cylradon
