#include "kee/monotone_cubic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kee {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  check_data();
  const std::size_t n = x_.size();
  m_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      m_[i] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
    } else if (i + 1 == n) {
      m_[i] = (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
    } else {
      m_[i] = 0.5 * ((y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]) +
                     (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]));
    }
  }
  limit_slopes();
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y,
                             std::vector<double> slopes)
    : x_(std::move(x)), y_(std::move(y)), m_(std::move(slopes)) {
  check_data();
  if (m_.size() != x_.size()) throw std::invalid_argument("MonotoneCubic: slope count");
  limit_slopes();
}

void MonotoneCubic::check_data() const {
  if (x_.size() != y_.size() || x_.size() < 2)
    throw std::invalid_argument("MonotoneCubic: need at least two matching knots");
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1]) || !(y_[i] > y_[i - 1]))
      throw std::invalid_argument("MonotoneCubic: data must be strictly increasing");
  }
}

void MonotoneCubic::limit_slopes() {
  // Fritsch–Carlson: slopes must be positive and (alpha, beta) within the
  // circle of radius 3 for each cell.
  for (auto& m : m_) m = std::max(m, 0.0);
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    const double delta = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    const double a = m_[i] / delta;
    const double b = m_[i + 1] / delta;
    const double r2 = a * a + b * b;
    if (r2 > 9.0) {
      const double t = 3.0 / std::sqrt(r2);
      m_[i] = t * a * delta;
      m_[i + 1] = t * b * delta;
    }
  }
}

std::size_t MonotoneCubic::cell_of_x(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

std::size_t MonotoneCubic::cell_of_y(double y) const {
  auto it = std::upper_bound(y_.begin(), y_.end(), y);
  std::size_t i = it == y_.begin() ? 0 : static_cast<std::size_t>(it - y_.begin()) - 1;
  return std::min(i, y_.size() - 2);
}

double MonotoneCubic::operator()(double x) const {
  const std::size_t i = cell_of_x(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
  const std::size_t i = cell_of_x(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double d00 = (6 * t2 - 6 * t) / h;
  const double d10 = 3 * t2 - 4 * t + 1;
  const double d01 = (-6 * t2 + 6 * t) / h;
  const double d11 = 3 * t2 - 2 * t;
  return d00 * y_[i] + d10 * m_[i] + d01 * y_[i + 1] + d11 * m_[i + 1];
}

double MonotoneCubic::inverse(double y) const {
  const std::size_t i = cell_of_y(y);
  double lo = x_[i];
  double hi = x_[i + 1];
  // Linear guess inside the cell, then Newton with bisection fallback.
  double x = lo + (hi - lo) * (y - y_[i]) / (y_[i + 1] - y_[i]);
  x = std::clamp(x, lo, hi);
  for (int iter = 0; iter < 100; ++iter) {
    const double f = (*this)(x) - y;
    if (f == 0.0) return x;
    if (f > 0.0) hi = x; else lo = x;
    const double d = derivative(x);
    double next = d > 0.0 ? x - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))
      return next;
    x = next;
  }
  return x;
}

}  // namespace kee
