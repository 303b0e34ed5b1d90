#pragma once

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "kee/errors.hpp"

namespace kee {

/// Tolerances for the adaptive Gauss–Kronrod driver.
struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  unsigned max_depth = 20;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw DomainError("quadrature tolerances must be positive");
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive G15/K31 on [a, b] (infinite limits allowed). Throws
/// QuadratureError when the error estimate exceeds the requested tolerance.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureConfig& cfg,
                           const char* what = "integral") {
  cfg.validate();
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, cfg.max_depth, cfg.rel_tol, &error, &l1);
  const double allowed = std::max(cfg.abs_tol, cfg.rel_tol * l1);
  if (!std::isfinite(value) || error > allowed) {
    throw QuadratureError(std::string(what) + ": error estimate " + std::to_string(error) +
                          " exceeds tolerance " + std::to_string(allowed));
  }
  return {value, error};
}

/// Single-panel 31-point Kronrod rule. Deterministic node set; the result is a
/// smooth function of the limits, which the tabulated maps rely on.
template <class F>
QuadratureResult integrate_panel(F&& f, double a, double b) {
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &error);
  return {value, error};
}

}  // namespace kee
