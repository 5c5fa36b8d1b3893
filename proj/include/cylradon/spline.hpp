#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cylradon {

/// Natural cubic spline through (x_i, y_i); T may be real or complex.
template <class T>
class CubicSpline {
 public:
  CubicSpline() = default;

  CubicSpline(std::vector<double> x, std::vector<T> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n != y_.size()) throw std::invalid_argument("spline: abscissae and values differ in length");
    if (n < 2) throw std::invalid_argument("spline: need at least two knots");
    for (std::size_t i = 1; i < n; ++i)
      if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("spline: abscissae must be strictly increasing");
    m_.assign(n, T{});
    if (n == 2) return;
    // Thomas algorithm on the interior second derivatives; m_0 = m_{n-1} = 0.
    std::vector<double> c(n, 0.0);
    std::vector<T> d(n, T{});
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = x_[i] - x_[i - 1];
      const double h1 = x_[i + 1] - x_[i];
      const double a = h0 / 6.0;
      const double b = (h0 + h1) / 3.0;
      const double cc = h1 / 6.0;
      const T rhs = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
      const double denom = b - a * c[i - 1];
      c[i] = cc / denom;
      d[i] = (rhs - a * d[i - 1]) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      m_[i] = d[i] - c[i] * m_[i + 1];
      if (i == 1) break;
    }
  }

  [[nodiscard]] double front() const { return x_.front(); }
  [[nodiscard]] double back() const { return x_.back(); }

  /// Evaluates inside [front, back]; the caller owns the range check.
  T operator()(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (i >= x_.size() - 1) i = x_.size() - 2;
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (h * h / 6.0);
  }

 private:
  std::vector<double> x_;
  std::vector<T> y_;
  std::vector<T> m_;
};

}  // namespace cylradon
