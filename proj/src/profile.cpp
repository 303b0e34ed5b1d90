#include "kee/profile.hpp"

#include <cmath>
#include <sstream>

namespace kee {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void check_beta1_domain(int n, double beta1) {
  SurfaceIndex{n};
  const bool ok = std::isfinite(beta1) && beta1 > 0.0 && beta1 <= 1.0 && n * beta1 < 2.0;
  if (!ok) {
    throw DomainError("beta1 must lie in (0, 2/n) ∩ (0,1]; got beta1=" + fmt(beta1) +
                      " with n=" + std::to_string(n));
  }
}

double beta2_closed_form(int n, double beta1) {
  check_beta1_domain(n, beta1);
  const double nb = n * beta1;
  const double root = std::sqrt(3.0 * (3.0 - nb) * (1.0 + nb));
  // √A − 3 = (A − 9)/(√A + 3) with A − 9 = 3nβ₁(2 − nβ₁).
  return 0.5 * beta1 * (1.0 + 3.0 * (2.0 - nb) / (root + 3.0));
}

EinsteinProfile EinsteinProfile::make(SurfaceIndex n, double beta1) {
  check_beta1_domain(n.value(), beta1);
  EinsteinProfile p;
  p.n_ = n.value();
  const double nb = p.n_ * beta1;
  // Vieta: α₁ + α₂ = −α₁α₂ = S.
  const double sum = (1.0 + nb) / (2.0 - nb);
  // Larger root first, the other from the product.
  p.alpha2_ = 0.5 * (sum + std::sqrt(sum * sum + 4.0 * sum));
  p.alpha1_ = -sum / p.alpha2_;
  p.leading_ = (beta1 - 2.0 / p.n_) / 3.0;
  p.angles_.beta1 = beta1;
  p.angles_.beta2 = beta2_closed_form(p.n_, beta1);
  p.angles_.lambda = 2.0 / p.n_ - beta1;
  if (!(p.alpha1_ < 0.0 && p.alpha2_ > 1.0 && p.leading_ < 0.0))
    throw DomainError("profile roots violate alpha1 < 0 < 1 < alpha2 for beta1=" + fmt(beta1));
  return p;
}

EinsteinProfile make_profile(int n, double beta1) {
  return EinsteinProfile::make(SurfaceIndex{n}, beta1);
}

MomentumPosition EinsteinProfile::position(double tau) const {
  if (!(tau >= 1.0 && tau <= alpha2_)) {
    throw DomainError("tau=" + fmt(tau) + " outside [1, T] with T=" + fmt(alpha2_));
  }
  return {tau, tau - 1.0, alpha2_ - tau};
}

MomentumPosition EinsteinProfile::position_from_end(End end, double gap) const {
  const double width = alpha2_ - 1.0;
  if (!(gap >= 0.0 && gap <= width))
    throw DomainError("endpoint gap " + fmt(gap) + " outside [0, T-1]");
  if (end == End::lower) return {1.0 + gap, gap, width - gap};
  return {alpha2_ - gap, width - gap, gap};
}

MomentumPosition EinsteinProfile::position_from_log_odds(double psi) const {
  const double width = alpha2_ - 1.0;
  // τ − 1 = width/(1 + e^{−ψ}), T − τ = width/(1 + e^{ψ}); one of the two
  // exponentials is ≤ 1 so nothing overflows for moderate ψ.
  const double lower = width / (1.0 + std::exp(-psi));
  const double upper = width / (1.0 + std::exp(psi));
  const double tau = psi <= 0.0 ? 1.0 + lower : alpha2_ - upper;
  return {tau, lower, upper};
}

double EinsteinProfile::log_odds(const MomentumPosition& x) const {
  return std::log(x.lower_gap) - std::log(x.upper_gap);
}

double EinsteinProfile::phi_reduced(const MomentumPosition& x) const {
  return -leading_ * (x.lower_gap + (1.0 - alpha1_)) / x.tau;
}

double EinsteinProfile::phi(const MomentumPosition& x) const {
  return x.lower_gap * x.upper_gap * phi_reduced(x);
}

double EinsteinProfile::phi_prime(const MomentumPosition& x) const {
  // g(τ) = (τ−1)(τ−α₁)(τ−α₂) = −L M U with L, U the gaps and M = τ − α₁;
  // φ' = c (τ g' − g)/τ² and g' = L M − M U − L U.
  const double L = x.lower_gap;
  const double U = x.upper_gap;
  const double M = L + (1.0 - alpha1_);
  const double gprime = L * M - M * U - L * U;
  const double g = -L * M * U;
  return leading_ * (x.tau * gprime - g) / (x.tau * x.tau);
}

EinsteinProfile EinsteinProfile::with_upper_root(double alpha2) const {
  if (!(alpha2 > 1.0)) throw DomainError("perturbed upper root must exceed 1");
  EinsteinProfile p = *this;
  p.alpha2_ = alpha2;
  p.consistent_ = false;
  p.angles_.beta2 = -p.phi_prime(p.position(alpha2));
  return p;
}

EinsteinProfile EinsteinProfile::with_upper_angle(double beta2) const {
  if (!(beta2 > 0.0)) throw DomainError("perturbed beta2 must be positive");
  // −φ'(α) = β₂  ⇔  c α² + (β₂ − c(1 + α₁)) α + c α₁ = 0.
  const double a = leading_;
  const double b = beta2 - leading_ * (1.0 + alpha1_);
  const double c = leading_ * alpha1_;
  const double disc = b * b - 4.0 * a * c;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  const double r1 = q / a;
  const double r2 = c / q;
  const double root = r1 > 1.0 ? r1 : r2;
  EinsteinProfile p = with_upper_root(root);
  p.angles_.beta2 = beta2;
  return p;
}

double eval_phi(const EinsteinProfile& p, double tau) { return p.phi(p.position(tau)); }

double eval_phi_expanded(const EinsteinProfile& p, double tau) {
  (void)p.position(tau);  // range check
  const double n = p.n();
  const double t1 = tau - 1.0;
  // (τ²−1)/τ and (τ³−1)/τ written through τ − 1 to keep relative accuracy at τ ≈ 1.
  return (t1 * (tau + 1.0)) / (n * tau) +
         (1.0 / 3.0) * (p.beta1() - 2.0 / n) * t1 * (tau * tau + tau + 1.0) / tau;
}

double eval_phi_prime(const EinsteinProfile& p, double tau) {
  return p.phi_prime(p.position(tau));
}

double ode_residual(const EinsteinProfile& p, double tau) {
  const MomentumPosition x = p.position(tau);
  const double n = p.n();
  return p.phi_prime(x) + p.phi(x) / tau - 2.0 / n - (p.beta1() - 2.0 / n) * tau;
}

Rational eval_phi_exact(int n, const Rational& beta1, const Rational& tau) {
  SurfaceIndex{n};
  const Rational one(1);
  const Rational inv_n(1, n);
  const Rational c = (beta1 - Rational(2, n)) * Rational(1, 3);
  return inv_n * (tau * tau - one) / tau + c * (tau * tau * tau - one) / tau;
}

}  // namespace kee
