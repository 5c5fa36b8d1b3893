#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cylradon/errors.hpp"
#include "cylradon/quadrature.hpp"
#include "cylradon/spline.hpp"

namespace cylradon {

/// Behaviour of a radial function beyond its sampled range.
/// decay p means |f(r)| = O(r^-p); +inf means faster than any power.
struct Tail {
  enum class Kind { none, exact, power };
  Kind kind = Kind::none;
  double decay = 0.0;

  static Tail none() { return {}; }
  /// The rule itself is valid on the whole half-line with the stated decay.
  static Tail exact(double decay = std::numeric_limits<double>::infinity()) { return {Kind::exact, decay}; }
  /// Sampled data continued as v_last * (r_last / r)^decay.
  static Tail power(double decay) { return {Kind::power, decay}; }
  [[nodiscard]] bool present() const { return kind != Kind::none; }
};

/// A function of one radial variable, either a callable rule or natural-spline
/// interpolated samples. Immutable; copies share state.
template <class T>
class RadialProfile {
 public:
  using value_type = T;
  using Rule = std::function<T(double)>;

  RadialProfile() : RadialProfile(zero()) {}

  /// Rule valid on [lo, hi]; hi = inf means the tail descriptor governs decay.
  static RadialProfile from_rule(Rule rule, Tail tail = Tail::exact(), double origin_exponent = 0.0,
                                 double lo = -std::numeric_limits<double>::infinity(),
                                 double hi = std::numeric_limits<double>::infinity()) {
    auto impl = std::make_shared<Impl>();
    impl->rule = std::move(rule);
    impl->tail = tail;
    impl->origin_exponent = origin_exponent;
    impl->lo = lo;
    impl->hi = hi;
    return RadialProfile(std::move(impl));
  }

  /// Samples on a strictly increasing nonnegative grid. With reflect_parity = p,
  /// the spline is built on the mirrored grid with f(-r) = p f(r), which keeps
  /// interpolation accurate down to r = 0 and extends coverage to [-back, back].
  static RadialProfile from_samples(std::vector<double> grid, std::vector<T> values, Tail tail = Tail::none(),
                                    std::optional<int> reflect_parity = std::nullopt,
                                    double origin_exponent = 0.0) {
    if (grid.size() != values.size())
      throw std::invalid_argument("RadialProfile: grid and values differ in length");
    if (grid.size() < 2) throw std::invalid_argument("RadialProfile: need at least two samples");
    if (grid.front() < 0) throw std::invalid_argument("RadialProfile: grid must be nonnegative");
    for (std::size_t i = 1; i < grid.size(); ++i)
      if (!(grid[i] > grid[i - 1]))
        throw std::invalid_argument("RadialProfile: grid must be strictly increasing");
    auto impl = std::make_shared<Impl>();
    impl->tail = tail;
    impl->origin_exponent = origin_exponent;
    impl->hi_sample = grid.back();
    impl->last = values.back();
    impl->hi = tail.present() ? std::numeric_limits<double>::infinity() : grid.back();
    impl->grid = grid;
    impl->values = values;
    if (reflect_parity) {
      const double p = *reflect_parity;
      std::vector<double> x;
      std::vector<T> y;
      for (std::size_t i = grid.size(); i-- > 0;) {
        if (grid[i] == 0.0) continue;
        x.push_back(-grid[i]);
        y.push_back(p * values[i]);
      }
      x.insert(x.end(), grid.begin(), grid.end());
      y.insert(y.end(), values.begin(), values.end());
      impl->spline = CubicSpline<T>(std::move(x), std::move(y));
      impl->lo = -grid.back();
    } else {
      impl->spline = CubicSpline<T>(std::move(grid), std::move(values));
      impl->lo = impl->grid.front();
    }
    impl->sampled = true;
    return RadialProfile(std::move(impl));
  }

  static RadialProfile zero() {
    return from_rule([](double) { return T{}; }, Tail::exact());
  }

  T operator()(double r) const {
    const Impl& m = *impl_;
    if (r < m.lo || r > m.hi || std::isnan(r)) {
      std::ostringstream os;
      os << "radial profile evaluated at " << r << " outside its coverage [" << m.lo << ", " << m.hi << "]";
      throw DomainError(os.str());
    }
    if (!m.sampled) return m.rule(r);
    if (r <= m.hi_sample) return m.spline(r);
    if (std::isinf(m.tail.decay)) return T{};
    return m.last * std::pow(m.hi_sample / r, m.tail.decay);
  }

  /// Profile g(r) = fn(r, f(r)) over the same coverage.
  template <class F>
  RadialProfile<std::invoke_result_t<F&, double, T>> mapped(F fn, Tail tail, double origin_exponent) const {
    using U = std::invoke_result_t<F&, double, T>;
    auto self = *this;
    return RadialProfile<U>::from_rule([self, fn](double r) mutable { return fn(r, self(r)); }, tail,
                                       origin_exponent, coverage_begin(), coverage_end());
  }

  /// Same values, every evaluation reported to the observer first.
  RadialProfile observed(std::function<void(double)> observer) const {
    auto self = *this;
    return from_rule(
        [self, observer = std::move(observer)](double r) {
          observer(r);
          return self(r);
        },
        tail(), origin_exponent(), coverage_begin(), coverage_end());
  }

  [[nodiscard]] const Tail& tail() const { return impl_->tail; }
  [[nodiscard]] double origin_exponent() const { return impl_->origin_exponent; }
  [[nodiscard]] double coverage_begin() const { return impl_->lo; }
  [[nodiscard]] double coverage_end() const { return impl_->hi; }
  [[nodiscard]] bool sampled() const { return impl_->sampled; }
  /// Sample abscissae (empty for rules).
  [[nodiscard]] const std::vector<double>& grid() const { return impl_->grid; }
  [[nodiscard]] const std::vector<T>& values() const { return impl_->values; }
  /// Where the spline hands over to the tail, if that is inside the half-line.
  [[nodiscard]] std::vector<double> knots() const {
    if (impl_->sampled) return {impl_->hi_sample};
    return {};
  }

 private:
  struct Impl {
    Rule rule;
    CubicSpline<T> spline;
    std::vector<double> grid;
    std::vector<T> values;
    Tail tail;
    double origin_exponent = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double hi_sample = 0.0;
    T last{};
    bool sampled = false;
  };

  explicit RadialProfile(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

using ModeProfile = RadialProfile<cplx>;

/// Real profile promoted to complex values.
inline ModeProfile to_complex(const RadialProfile<double>& f) {
  return f.mapped([](double, double v) { return cplx(v, 0.0); }, f.tail(), f.origin_exponent());
}

}  // namespace cylradon
