#pragma once

#include "kee/rational.hpp"

namespace kee {

/// Divisor class a·[Zₙ] + b·[F] on 𝔽ₙ, where Zₙ is the (−n)-curve and F the fiber.
/// Exact for integer/rational classes; the Kähler–Einstein class has
/// irrational coefficients and uses T = double.
template <class T>
struct DivisorClassT {
  T a{};  ///< coefficient of Zₙ
  T b{};  ///< coefficient of F

  friend DivisorClassT operator+(const DivisorClassT& x, const DivisorClassT& y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend DivisorClassT operator-(const DivisorClassT& x, const DivisorClassT& y) {
    return {x.a - y.a, x.b - y.b};
  }
  friend DivisorClassT operator*(const T& k, const DivisorClassT& x) { return {k * x.a, k * x.b}; }
  friend bool operator==(const DivisorClassT&, const DivisorClassT&) = default;
};

using DivisorClass = DivisorClassT<Rational>;
using RealDivisorClass = DivisorClassT<double>;

/// Coefficients in the (Zₙ, Z₋ₙ) basis: x·Zₙ + y·Z₋ₙ.
template <class T>
struct SectionCoordinates {
  T zn{};
  T zmn{};
  friend bool operator==(const SectionCoordinates&, const SectionCoordinates&) = default;
};

/// Zₙ² = −n, Zₙ·F = 1, F² = 0.
template <class T>
T intersect(int n, const DivisorClassT<T>& x, const DivisorClassT<T>& y) {
  return T(-n) * x.a * y.a + x.a * y.b + x.b * y.a;
}

template <class T>
T class_volume(int n, const DivisorClassT<T>& x) {
  return intersect(n, x, x);
}

/// Z₋ₙ = Zₙ + nF.
template <class T>
SectionCoordinates<T> to_sections(int n, const DivisorClassT<T>& x) {
  const T y = x.b / T(n);
  return {x.a - y, y};
}

template <class T>
DivisorClassT<T> from_sections(int n, const SectionCoordinates<T>& c) {
  return {c.zn + c.zmn, T(n) * c.zmn};
}

/// Kähler cone: −x·Zₙ + y·Z₋ₙ with y > x > 0.
template <class T>
bool is_kahler(int n, const DivisorClassT<T>& cls) {
  const SectionCoordinates<T> c = to_sections(n, cls);
  const T x = -c.zn;
  const T y = c.zmn;
  return y > x && x > T(0);
}

[[nodiscard]] DivisorClass zero_section(int n);      ///< Zₙ = C₁
[[nodiscard]] DivisorClass infinity_section(int n);  ///< Z₋ₙ = C₂
[[nodiscard]] DivisorClass fiber_class(int n);       ///< F = (Z₋ₙ − Zₙ)/n
/// K = −2Zₙ − (n + 2)F.
[[nodiscard]] DivisorClass canonical_class(int n);

[[nodiscard]] RealDivisorClass to_real(const DivisorClass& x);

/// Class of the Kähler–Einstein edge metric: c[Z₋ₙ] − [Zₙ], c = (2 + nβ₂)/(2 − nβ₁).
[[nodiscard]] RealDivisorClass kee_class(int n, double beta1, double beta2);

/// max-abs coefficient difference between λ[ω] and −K − (1−β₁)[C₁] − (1−β₂)[C₂].
[[nodiscard]] double proportionality_check(int n, double beta1, double beta2);

}  // namespace kee
