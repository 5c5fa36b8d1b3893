#pragma once

#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cylradon/errors.hpp"
#include "cylradon/quadrature.hpp"

namespace cylradon {

/// Chebyshev polynomial of the first kind, evaluated on its three branches:
/// cos(l acos x) on |x| <= 1, cosh(l acosh x) for x > 1, (-1)^l cosh(l acosh(-x)) for x < -1.
template <class Real>
Real cheb_T(unsigned l, Real x) {
  using std::acos;
  using std::acosh;
  using std::cos;
  using std::cosh;
  if (x > 1) return cosh(Real(l) * acosh(x));
  if (x < -1) {
    const Real v = cosh(Real(l) * acosh(-x));
    return l % 2 == 0 ? v : Real(-v);
  }
  return cos(Real(l) * acos(x));
}

inline double cheb_T(unsigned l, double x) { return cheb_T<double>(l, x); }

/// r z int_z^r T_l(p/z) T_l(p/r) / (sqrt(r^2-p^2) sqrt(p^2-z^2) p) dp, computed after
/// p = z r / sqrt(r^2 sin^2 w + z^2 cos^2 w), which turns it into int_0^{pi/2} T_l(p/z) T_l(p/r) dw.
/// The integrand varies on the scale z/r near w = 0, so panels are graded geometrically there.
/// Terms reach T_l(r/z) ~ (2r/z)^l / 2 and cancel down to O(1); pick Real accordingly.
template <class Real>
Real cormack_integral(unsigned l, const Real& z, const Real& r, int nodes = 24) {
  using std::atan;
  using std::cos;
  using std::sin;
  using std::sqrt;
  if (!(z > 0) || !(r > z)) throw DomainError("Cormack integral needs 0 < z < r");
  const Real half_pi_r = 2 * atan(Real(1));
  const Real scale = z / r;
  std::vector<Real> breaks{half_pi_r};
  while (breaks.back() > scale / 16) breaks.push_back(breaks.back() / 2);
  breaks.push_back(Real(0));
  auto integrand = [&](const Real& w) {
    const Real sw = sin(w);
    const Real cw = cos(w);
    const Real p = z * r / sqrt(r * r * sw * sw + z * z * cw * cw);
    return cheb_T<Real>(l, p / z) * cheb_T<Real>(l, p / r);
  };
  Real sum = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    sum += integrate_gl(integrand, breaks[i + 1], breaks[i], nodes);
  return sum;
}

struct CormackResult {
  double value = 0.0;
  double residual = 0.0;  ///< |value - pi/2|
};

/// Evaluates the Cormack integral in enough precision that cancellation stays
/// below 1e-12 of the result. Throws DomainError past 100 significant digits of headroom.
inline CormackResult cormack_check(unsigned l, double z, double r) {
  using boost::multiprecision::cpp_bin_float_100;
  using boost::multiprecision::cpp_bin_float_50;
  if (!(z > 0) || !(r > z)) throw DomainError("cormack_check needs 0 < z < r");
  const double digits_lost = l * std::log10(2.0 * r / z);
  // quadrature error must also sit below the cancelled magnitude, so nodes grow with it
  const int nodes = 24 + static_cast<int>(std::max(0.0, digits_lost));
  double value = 0.0;
  if (digits_lost < 8) {
    value = static_cast<double>(cormack_integral<long double>(l, z, r, nodes));
  } else if (digits_lost < 36) {
    value = static_cast<double>(
        cormack_integral<cpp_bin_float_50>(l, cpp_bin_float_50(z), cpp_bin_float_50(r), nodes));
  } else if (digits_lost < 86) {
    value = static_cast<double>(
        cormack_integral<cpp_bin_float_100>(l, cpp_bin_float_100(z), cpp_bin_float_100(r), nodes));
  } else {
    throw DomainError("cormack_check: z/r too small for the available precision");
  }
  return {value, std::abs(value - half_pi)};
}

}  // namespace cylradon
