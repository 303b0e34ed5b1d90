#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kee {

/// Shape-preserving cubic Hermite interpolant of strictly increasing data.
///
/// Slopes are either supplied (exact derivatives) or estimated from the
/// secants; in both cases they are limited with the Fritsch–Carlson rule so
/// the interpolant is strictly increasing and hence invertible.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> slopes);

  [[nodiscard]] double operator()(double x) const;
  [[nodiscard]] double derivative(double x) const;
  /// Solves interpolant(x) = y by safeguarded Newton inside the bracketing cell.
  [[nodiscard]] double inverse(double y) const;

  /// Index i with x[i] <= x <= x[i+1], clamped to the valid cell range.
  [[nodiscard]] std::size_t cell_of_x(double x) const;
  [[nodiscard]] std::size_t cell_of_y(double y) const;

  [[nodiscard]] std::span<const double> xs() const { return x_; }
  [[nodiscard]] std::span<const double> ys() const { return y_; }
  [[nodiscard]] std::span<const double> slopes() const { return m_; }
  [[nodiscard]] std::size_t size() const { return x_.size(); }

 private:
  void check_data() const;
  void limit_slopes();

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;
};

}  // namespace kee
