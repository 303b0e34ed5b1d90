#include "kee/cohomology.hpp"

#include <algorithm>
#include <cmath>

#include "kee/errors.hpp"
#include "kee/profile.hpp"

namespace kee {

DivisorClass zero_section(int n) {
  SurfaceIndex{n};
  return {Rational(1), Rational(0)};
}

DivisorClass infinity_section(int n) {
  SurfaceIndex{n};
  return {Rational(1), Rational(n)};
}

DivisorClass fiber_class(int n) {
  SurfaceIndex{n};
  return {Rational(0), Rational(1)};
}

DivisorClass canonical_class(int n) {
  SurfaceIndex{n};
  return {Rational(-2), Rational(-(n + 2))};
}

RealDivisorClass to_real(const DivisorClass& x) { return {x.a.to_double(), x.b.to_double()}; }

RealDivisorClass kee_class(int n, double beta1, double beta2) {
  SurfaceIndex{n};
  const double denom = 2.0 - n * beta1;
  if (!(denom > 0.0)) throw DomainError("kee_class needs 2 - n*beta1 > 0");
  return {n * (beta1 + beta2) / denom, n * (2.0 + n * beta2) / denom};
}

double proportionality_check(int n, double beta1, double beta2) {
  const double lambda = 2.0 / n - beta1;
  // class of the metric itself, read off its momentum interval [1, T]; using
  // kee_class(β₁, β₂) here would make the identity hold for every β₂
  const double T = make_profile(n, beta1).T();
  const RealDivisorClass metric_class =
      T * to_real(infinity_section(n)) - to_real(zero_section(n));
  const RealDivisorClass lhs = lambda * metric_class;
  const RealDivisorClass rhs = (-1.0) * to_real(canonical_class(n)) -
                               (1.0 - beta1) * to_real(zero_section(n)) -
                               (1.0 - beta2) * to_real(infinity_section(n));
  return std::max(std::abs(lhs.a - rhs.a), std::abs(lhs.b - rhs.b));
}

}  // namespace kee
