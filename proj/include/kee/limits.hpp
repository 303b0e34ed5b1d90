#pragma once

#include <span>
#include <vector>

#include "kee/geometry.hpp"

namespace kee {

/// β₂ ≈ β₁ (order 1) or β₁ − (n/3)β₁² (order 2).
[[nodiscard]] double beta2_series(int n, double beta1, int order);

enum class Root { alpha1, alpha2 };

/// Second-order small-angle expansions of the roots:
///   α₂ ≈ 1 + nβ₁ + n²β₁²/3,  α₁ ≈ −1/2 − nβ₁/4 + n²β₁²/24.
[[nodiscard]] double alpha_series(int n, double beta1, Root which);

/// ((2 − nβ₁)/(2n))·(n²β₁²/4)·(1 − β₁²y²); |y| ≤ 1/β₁.
[[nodiscard]] double rescaled_phi_y(int n, double beta1, double y);

struct RescaledFiberCoefficients {
  double coeff_y = 0.0;      ///< n²β₁²/(8φ)
  double coeff_theta = 0.0;  ///< 2φ/β₁²
};

/// Fiber metric rescaled by β₁⁻², in (y, θ), using the exact φ at τ(y).
[[nodiscard]] RescaledFiberCoefficients rescaled_fiber_metric(const EinsteinProfile& p, double y);
[[nodiscard]] RescaledFiberCoefficients rescaled_fiber_metric(int n, double beta1, double y);

/// The collapsed limit nω_FS pulled back to the chart: g_zz̄ = n/(1+|z|²)², rest 0.
[[nodiscard]] HermitianForm2 collapsed_limit_metric(int n, const ChartPoint& pt);

/// ‖metric_at(pt) − nω_FS(pt)‖_max.
[[nodiscard]] double tensor_deviation(const TauSMap& m, const ChartPoint& pt);

/// Full-fiber length as β₁ → 0: π√(n/2).
[[nodiscard]] double fiber_length_asymptote(int n);

/// Least-squares slope of log|y| against log x.
[[nodiscard]] double log_log_slope(std::span<const double> x, std::span<const double> y);

struct CollapseEntry {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double alpha2 = 0.0;
  double fiber_length = 0.0;
  double rescaled_length = 0.0;  ///< fiber_length/β₁
  double rescaled_coeff_y = 0.0;
  double rescaled_coeff_theta = 0.0;
  double tensor_deviation_at_probe = 0.0;
  double beta2_series_deviation = 0.0;   ///< |β₂ − (β₁ − nβ₁²/3)|
  double alpha2_series_deviation = 0.0;  ///< |α₂ − series|
  double alpha1_series_deviation = 0.0;  ///< |α₁ − series|
};

struct CollapseReport {
  int n = 1;
  std::vector<CollapseEntry> entries;  ///< in input order (β₁ decreasing)
};

struct CollapseOptions {
  ChartPoint probe{Complex(0.5, 0.0), Complex(1.0, 0.0)};
  double y_probe = 0.0;
  QuadratureConfig quad{};
  MapOptions map{};
  unsigned threads = 1;
};

/// β₁ list must be strictly decreasing and inside the admissible domain.
[[nodiscard]] CollapseReport collapse_report(int n, std::span<const double> beta1_list,
                                             const CollapseOptions& opts = {});

}  // namespace kee
