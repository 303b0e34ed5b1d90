#pragma once

#include <optional>
#include <vector>

#include "kee/monotone_cubic.hpp"
#include "kee/profile.hpp"
#include "kee/quadrature.hpp"

namespace kee {

/// Pins the additive constant in s: s(τ₀) = 0. Defaults to the midpoint (1 + T)/2.
struct GaugeChoice {
  std::optional<double> tau0;

  [[nodiscard]] double resolve(const EinsteinProfile& p) const;
};

struct MapOptions {
  /// The map is extended until it covers s ∈ [−s_hull, s_hull].
  double s_hull = 40.0;
  std::size_t max_knots = 200000;
};

/// Tabulated correspondence between the momentum τ and the log-fiber
/// coordinate s, with dτ/ds = φ(τ).
///
/// Knots sit on a uniform grid in ψ = log(τ − 1) − log(T − τ). In that
/// variable ds/dψ = 1/((T − 1)·φ/((τ−1)(T−τ))) is smooth and bounded, so
/// the logarithmic divergence of s at both ends costs nothing. A monotone
/// cubic s ↦ ψ seeds the inversion; queries are then solved against the
/// knot-anchored Gauss rule, so τ(s) is accurate and smooth to round-off.
class TauSMap {
 public:
  struct Knot {
    double tau;
    double s;
  };

  TauSMap(EinsteinProfile profile, double tau0, std::vector<double> psi, std::vector<double> s,
          MonotoneCubic guess);

  [[nodiscard]] const EinsteinProfile& profile() const { return profile_; }
  [[nodiscard]] double tau0() const { return tau0_; }
  [[nodiscard]] std::vector<Knot> knots() const;
  [[nodiscard]] std::size_t knot_count() const { return psi_.size(); }
  [[nodiscard]] double s_min() const { return s_.front(); }
  [[nodiscard]] double s_max() const { return s_.back(); }
  [[nodiscard]] bool covers(double s) const { return s >= s_min() && s <= s_max(); }

  /// RangeError outside [s_min, s_max].
  [[nodiscard]] MomentumPosition position_of_s(double s) const;
  /// RangeError if the position lies beyond the outermost knots.
  [[nodiscard]] double s_of_position(const MomentumPosition& x) const;

 private:
  [[nodiscard]] double ds_dpsi(double psi) const;
  [[nodiscard]] double s_from_knot(std::size_t k, double psi) const;

  EinsteinProfile profile_;
  double tau0_;
  std::vector<double> psi_;
  std::vector<double> s_;
  MonotoneCubic guess_;
};

[[nodiscard]] TauSMap build_map(const EinsteinProfile& p, const GaugeChoice& g = {},
                                const QuadratureConfig& quad = {}, const MapOptions& opts = {});

[[nodiscard]] double s_of_tau(const TauSMap& m, double tau);
[[nodiscard]] double tau_of_s(const TauSMap& m, double s);

/// d log φ(τ(s))/ds = φ_τ(τ(s)) at s = −|s_probe| (lower) or +|s_probe|
/// (upper). Tends to β₁ and −β₂ respectively.
[[nodiscard]] double log_slope_at_end(const TauSMap& m, End end, double s_probe);

/// Small-angle variable y = (τ − 1 − nβ₁/2)/(nβ₁²/2). Endpoints included.
[[nodiscard]] double y_of_tau(const EinsteinProfile& p, double tau);
[[nodiscard]] double tau_of_y(const EinsteinProfile& p, double y);
[[nodiscard]] MomentumPosition position_of_y(const EinsteinProfile& p, double y);
[[nodiscard]] double y_upper_limit(const EinsteinProfile& p);

}  // namespace kee
