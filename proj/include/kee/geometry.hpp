#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "kee/legendre.hpp"

namespace kee {

using Complex = std::complex<double>;

/// Point (z, w) in the affine chart Z₂ = 1 of 𝔽ₙ with w ≠ 0.
struct ChartPoint {
  Complex z;
  Complex w;

  ChartPoint(Complex z_, Complex w_);
  /// s = log|w|² + n log(1 + |z|²).
  [[nodiscard]] double s(int n) const;
};

/// Hermitian 2×2 matrix in the coordinates (w, z).
struct HermitianForm2 {
  double ww = 0.0;
  Complex wz{};  ///< entry (w, z̄); the (z, w̄) entry is its conjugate.
  double zz = 0.0;

  [[nodiscard]] double det() const { return ww * zz - std::norm(wz); }
  [[nodiscard]] std::array<double, 2> eigenvalues() const;
  [[nodiscard]] double max_abs() const;
  friend HermitianForm2 operator-(const HermitianForm2& a, const HermitianForm2& b) {
    return {a.ww - b.ww, a.wz - b.wz, a.zz - b.zz};
  }
  friend HermitianForm2 operator*(double k, const HermitianForm2& a) {
    return {k * a.ww, k * a.wz, k * a.zz};
  }
};

/// Restriction of the metric to a fiber: dτ²/(2φ) + 2φ dθ².
struct FiberMetricSample {
  double tau = 0.0;
  double radial_coeff = 0.0;
  double angular_coeff = 0.0;
};

/// Metric entries φ/|w|², nφz/(w(1+|z|²)), (nτ + n²φ|z|²)/(1+|z|²)² for a
/// known momentum position. PositivityError if not positive definite.
[[nodiscard]] HermitianForm2 metric_from_position(const EinsteinProfile& p,
                                                  const MomentumPosition& x,
                                                  const ChartPoint& pt);
[[nodiscard]] HermitianForm2 metric_at(const TauSMap& m, const ChartPoint& pt);

/// Ricci form −i∂∂̄ log det g by central differences in (log|w|, arg w, Re z, Im z).
/// With `richardson` the steps h and h/2 are combined to fourth order.
[[nodiscard]] HermitianForm2 ricci_fd(const TauSMap& m, const ChartPoint& pt, double step,
                                      bool richardson = true);

/// max over the grid of ‖Ric − λ g‖_max. Points are evaluated on up to
/// `threads` workers; the reduction is order independent.
[[nodiscard]] double einstein_residual(const TauSMap& m, std::span<const ChartPoint> grid,
                                       double step, unsigned threads = 1);

/// Grid of n_abs × n_arg × n_s chart points: |z| ∈ [0.2, 1.4], arg z uniform,
/// s ∈ [−s_span, s_span], arg w = 0.3.
[[nodiscard]] std::vector<ChartPoint> residual_grid(int n, int n_abs = 5, int n_arg = 5,
                                                    int n_s = 3, double s_span = 2.0);

[[nodiscard]] FiberMetricSample fiber_metric_sample(const EinsteinProfile& p, double tau);

/// ∫ dτ/√(2φ) over [tau_a, tau_b] ⊂ [1, T]; endpoints allowed.
[[nodiscard]] double fiber_length(const EinsteinProfile& p, double tau_a, double tau_b,
                                  const QuadratureConfig& quad = {});

/// circumference/radius of the fiber circle at tau_probe, radius measured from the chosen end.
[[nodiscard]] double cone_angle_probe(const EinsteinProfile& p, End end, double tau_probe,
                                      const QuadratureConfig& quad = {});

/// Quadrature of the fiber area form; equals 2π(T − 1).
[[nodiscard]] double fiber_volume(const EinsteinProfile& p, const QuadratureConfig& quad = {});

/// ∫η² = 2 (∫ω_FS)(∫∫ nτ dτ dθ) = 4π² n (T² − 1), by quadrature.
[[nodiscard]] double total_volume(const EinsteinProfile& p, const QuadratureConfig& quad = {});

}  // namespace kee
