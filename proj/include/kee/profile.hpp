#pragma once

#include <string>

#include "kee/errors.hpp"
#include "kee/rational.hpp"

namespace kee {

/// Hirzebruch index n of 𝔽ₙ. The product case n = 0 is not supported.
class SurfaceIndex {
 public:
  explicit SurfaceIndex(int n) : n_(n) {
    if (n < 1) throw DomainError("surface index n must be >= 1 (got " + std::to_string(n) + ")");
  }
  [[nodiscard]] int value() const { return n_; }

 private:
  int n_;
};

struct ConeAngles {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double lambda = 0.0;  ///< Einstein constant 2/n − β₁.
};

enum class End { lower, upper };

/// A momentum value τ ∈ [1, T] together with its distances to both ends.
/// The gaps are carried separately because near the divisors they are far
/// below the resolution of τ itself (τ − 1 ≈ 1e−17 is common).
struct MomentumPosition {
  double tau = 1.0;
  double lower_gap = 0.0;  ///< τ − 1
  double upper_gap = 0.0;  ///< T − τ
};

/// Throws DomainError unless β₁ ∈ (0, 2/n) ∩ (0, 1].
void check_beta1_domain(int n, double beta1);

/// Closed-form second angle, evaluated without the cancellation that the
/// textbook expression (nβ₁ − 3 + √(3(3−nβ₁)(1+nβ₁)))/(2n) has as β₁ → 0.
[[nodiscard]] double beta2_closed_form(int n, double beta1);

/// Momentum profile φ(τ) = c (τ − 1)(τ − α₁)(τ − α₂)/τ on [1, α₂] solving the
/// Einstein ODE (τφ)' = 2τ/n + (β₁ − 2/n)τ², φ(1) = 0.
///
/// Profiles built by make_profile are consistent: φ'(1) = β₁ and
/// φ'(α₂) = −β₂. The with_* variants move the upper root away from the
/// Einstein solution and exist to check that the verifiers detect it.
class EinsteinProfile {
 public:
  static EinsteinProfile make(SurfaceIndex n, double beta1);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] double beta1() const { return angles_.beta1; }
  [[nodiscard]] double beta2() const { return angles_.beta2; }
  [[nodiscard]] double lambda() const { return angles_.lambda; }
  [[nodiscard]] const ConeAngles& angles() const { return angles_; }
  /// Leading coefficient c = (β₁ − 2/n)/3.
  [[nodiscard]] double leading() const { return leading_; }
  [[nodiscard]] double alpha1() const { return alpha1_; }
  [[nodiscard]] double alpha2() const { return alpha2_; }
  /// Upper end T of the momentum interval; equal to α₂.
  [[nodiscard]] double T() const { return alpha2_; }
  /// False for the perturbed variants.
  [[nodiscard]] bool consistent() const { return consistent_; }

  [[nodiscard]] MomentumPosition position(double tau) const;
  [[nodiscard]] MomentumPosition position_from_end(End end, double gap) const;
  /// Position from the log-odds coordinate ψ = log(τ − 1) − log(T − τ).
  [[nodiscard]] MomentumPosition position_from_log_odds(double psi) const;
  [[nodiscard]] double log_odds(const MomentumPosition& x) const;

  [[nodiscard]] double phi(const MomentumPosition& x) const;
  [[nodiscard]] double phi_prime(const MomentumPosition& x) const;
  /// φ/((τ−1)(T−τ)) = −c (τ − α₁)/τ; smooth and positive up to both ends.
  [[nodiscard]] double phi_reduced(const MomentumPosition& x) const;

  /// Same leading coefficient and α₁, upper root moved to `alpha2`.
  [[nodiscard]] EinsteinProfile with_upper_root(double alpha2) const;
  /// Upper root chosen so that −φ'(T) equals `beta2`.
  [[nodiscard]] EinsteinProfile with_upper_angle(double beta2) const;

 private:
  EinsteinProfile() = default;

  int n_ = 1;
  ConeAngles angles_;
  double leading_ = 0.0;
  double alpha1_ = 0.0;
  double alpha2_ = 0.0;
  bool consistent_ = true;
};

[[nodiscard]] EinsteinProfile make_profile(int n, double beta1);

/// φ(τ) from the factored form. DomainError outside [1, T].
[[nodiscard]] double eval_phi(const EinsteinProfile& p, double tau);
/// φ(τ) from the integrated form (1/n)(τ²−1)/τ + c(τ³−1)/τ.
[[nodiscard]] double eval_phi_expanded(const EinsteinProfile& p, double tau);
[[nodiscard]] double eval_phi_prime(const EinsteinProfile& p, double tau);
/// φ_τ + φ/τ − 2/n − (β₁ − 2/n)τ.
[[nodiscard]] double ode_residual(const EinsteinProfile& p, double tau);

/// Integrated form evaluated in exact arithmetic.
[[nodiscard]] Rational eval_phi_exact(int n, const Rational& beta1, const Rational& tau);

}  // namespace kee
