#pragma once

// Quadrature building blocks shared by every operator: Gauss-Legendre rules
// (any floating type, including Boost.Multiprecision), composite panels,
// half-line integration with a tangent map for the tail, the periodic
// trapezoid rule, and Richardson-extrapolated finite differences.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace cylradon {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double half_pi = std::numbers::pi / 2;
inline constexpr double two_pi = 2 * std::numbers::pi;
inline constexpr double sqrt_pi = 1.7724538509055160273;

/// Node counts, truncation and tolerances used by every integral in the library.
struct QuadratureSpec {
  int n_angular = 256;    ///< periodic trapezoid nodes; GL nodes on finite singular-weight integrals
  int n_tail = 32;        ///< GL nodes per panel on half-line integrals
  int tail_panels = 4;    ///< panels of the tangent-mapped tail beyond r_max
  double r_max = 8.0;     ///< half-line integrals are panelized up to here, tangent-mapped beyond
  double tail_tol = 1e-8; ///< refinement disagreement above this flags non-convergence
  double fd_step = 1e-4;  ///< relative finite-difference step, h = fd_step * max(t, 1)
  int n_rho = 64;         ///< polar samples used when a sphere field is sampled for inversion
  double max_amplification = 1e8;  ///< bound on t^-2 amplification accepted by d_half
  double singular_tol = 1e-6;      ///< innermost-panel share above which an inversion integral is refused
  double singular_abs = 1e-9;      ///< absolute slack for that test

  /// Every node count doubled.
  [[nodiscard]] QuadratureSpec refined() const {
    QuadratureSpec r = *this;
    r.n_angular *= 2;
    r.n_tail *= 2;
    r.n_rho *= 2;
    return r;
  }

  /// Every node count halved (floored at the minimum of 4).
  [[nodiscard]] QuadratureSpec coarsened() const {
    QuadratureSpec r = *this;
    r.n_angular = std::max(4, r.n_angular / 2);
    r.n_tail = std::max(4, r.n_tail / 2);
    r.n_rho = std::max(4, r.n_rho / 2);
    return r;
  }

  void validate() const {
    if (n_angular < 4 || n_tail < 4 || tail_panels < 1 || n_rho < 4)
      throw std::invalid_argument("QuadratureSpec: node counts must be >= 4");
    if (!(r_max > 0) || !(tail_tol > 0) || !(fd_step > 0) || !(max_amplification > 0) || !(singular_tol > 0) ||
        !(singular_abs >= 0))
      throw std::invalid_argument("QuadratureSpec: r_max and tolerances must be positive");
  }
};

/// A value together with an error estimate from comparing two resolutions.
template <class T>
struct Estimate {
  T value{};
  double error = 0.0;
  bool converged = true;
};

template <class Real>
struct GaussRule {
  std::vector<Real> nodes;    // on [-1, 1], ascending
  std::vector<Real> weights;
};

/// Gauss-Legendre nodes and weights by Newton iteration on P_n.
template <class Real>
GaussRule<Real> compute_gauss_legendre(int n) {
  using std::abs;
  using std::atan;
  using std::cos;
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs n >= 1");
  const Real pi_r = 4 * atan(Real(1));
  const Real eps = std::numeric_limits<Real>::epsilon();
  GaussRule<Real> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    Real x = cos(pi_r * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
    Real dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      const Real dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= 4 * eps * abs(x) + eps) break;
    }
    // one more derivative evaluation at the converged node
    Real p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1;
    dp = n * (x * p1 - p0) / (x * x - 1);
    const Real w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0;
  return rule;
}

/// Thread-safe cache of Gauss-Legendre rules, one table per floating type.
template <class Real = double>
const GaussRule<Real>& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule<Real>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule<Real>>(compute_gauss_legendre<Real>(n));
  return *slot;
}

template <class F, class Real>
using integrand_value_t = std::decay_t<std::invoke_result_t<F&, Real>>;

/// Gauss-Legendre with n nodes on [a, b].
template <class F, class Real = double>
auto integrate_gl(F&& f, Real a, Real b, int n) -> integrand_value_t<F, Real> {
  using Value = integrand_value_t<F, Real>;
  const auto& rule = gauss_legendre<Real>(n);
  const Real mid = (a + b) / 2;
  const Real half = (b - a) / 2;
  Value sum{};
  for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

/// Composite Gauss-Legendre over consecutive breakpoints.
template <class F, class Real = double>
auto integrate_panels(F&& f, std::span<const Real> breaks, int n) -> integrand_value_t<F, Real> {
  using Value = integrand_value_t<F, Real>;
  Value sum{};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (breaks[i + 1] > breaks[i]) sum += integrate_gl(f, breaks[i], breaks[i + 1], n);
  return sum;
}

template <class F>
auto integrate_panels(F&& f, const std::vector<double>& breaks, int n) -> integrand_value_t<F, double> {
  return integrate_panels<F&, double>(f, std::span<const double>(breaks), n);
}

/// Breakpoints a, a+1, a+2, a+4, ... up to a + r_max, plus any extra knots.
inline std::vector<double> half_line_breaks(double a, double r_max, std::span<const double> extra = {}) {
  std::vector<double> breaks{a};
  for (double w = 1.0; w < r_max; w *= 2) breaks.push_back(a + w);
  breaks.push_back(a + r_max);
  for (double k : extra)
    if (k > a && k < a + r_max) breaks.push_back(k);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return breaks;
}

/// Integral over [a, inf): panels on [a, a + r_max], then w = a + r_max + r_max tan(u)
/// on the tail. The tangent map turns power-law decay w^-p (p >= 2) into a smooth
/// integrand on [0, pi/2], so no truncation error is committed.
template <class F>
auto integrate_half_line(F&& f, double a, const QuadratureSpec& q, std::span<const double> knots = {})
    -> integrand_value_t<F, double> {
  using Value = integrand_value_t<F, double>;
  const auto breaks = half_line_breaks(a, q.r_max, knots);
  Value sum = integrate_panels<F&, double>(f, breaks, q.n_tail);
  const double start = a + q.r_max;
  const double scale = q.r_max;
  auto mapped = [&](double u) -> Value {
    const double c = std::cos(u);
    if (c <= 0) return Value{};
    const double w = start + scale * std::tan(u);
    return f(w) * (scale / (c * c));
  };
  for (int p = 0; p < q.tail_panels; ++p) {
    const double u0 = half_pi * p / q.tail_panels;
    const double u1 = half_pi * (p + 1) / q.tail_panels;
    sum += integrate_gl(mapped, u0, u1, q.n_tail);
  }
  return sum;
}

/// Mean of a 2pi-periodic function by the n-point trapezoid rule.
template <class F>
auto periodic_mean(F&& f, int n, double offset = 0.0) -> integrand_value_t<F, double> {
  using Value = integrand_value_t<F, double>;
  Value sum{};
  for (int k = 0; k < n; ++k) sum += f(offset + two_pi * k / n);
  return sum / static_cast<double>(n);
}

/// Fourth-order central difference, Richardson-extrapolated between h and h/2.
template <class F>
auto derivative_central(F&& f, double t, double h) -> integrand_value_t<F, double> {
  auto d4 = [&](double s) {
    return (f(t - 2 * s) - 8.0 * f(t - s) + 8.0 * f(t + s) - f(t + 2 * s)) / (12.0 * s);
  };
  const auto coarse = d4(h);
  const auto fine = d4(h / 2);
  return (16.0 * fine - coarse) / 15.0;
}

/// Fourth-order one-sided (backward) difference, Richardson-extrapolated between
/// h and h/2. Only reads f on [t - 4h, t].
template <class F>
auto derivative_backward(F&& f, double t, double h) -> integrand_value_t<F, double> {
  auto d4 = [&](double s) {
    return (25.0 * f(t) - 48.0 * f(t - s) + 36.0 * f(t - 2 * s) - 16.0 * f(t - 3 * s) +
            3.0 * f(t - 4 * s)) /
           (12.0 * s);
  };
  const auto coarse = d4(h);
  const auto fine = d4(h / 2);
  return (16.0 * fine - coarse) / 15.0;
}

/// Magnitude helper usable for both real and complex values.
template <class T>
double magnitude(const T& v) {
  using std::abs;
  return static_cast<double>(abs(v));
}

}  // namespace cylradon
