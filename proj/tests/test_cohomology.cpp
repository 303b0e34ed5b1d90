#include <doctest.h>

#include <cmath>

#include "kee/cohomology.hpp"
#include "kee/profile.hpp"
#include "oracles.hpp"

using namespace kee;

TEST_CASE("intersection form") {
  CHECK(intersect(3, zero_section(3), zero_section(3)) == Rational(-3));
  CHECK(intersect(3, zero_section(3), fiber_class(3)) == Rational(1));
  CHECK(intersect(3, fiber_class(3), fiber_class(3)) == Rational(0));
  // (Zₙ + 2F)² expanded by hand for n = 2: −2 + 2·2·1 + 0 = 2
  const DivisorClass zmn = zero_section(2) + Rational(2) * fiber_class(2);
  CHECK(zmn == infinity_section(2));
  CHECK(intersect(2, zmn, zmn) == Rational(2));
  CHECK(intersect(2, zero_section(2), infinity_section(2)) == Rational(0));
}

TEST_CASE("canonical class and adjunction") {
  CHECK(canonical_class(2) == DivisorClass{Rational(-2), Rational(-4)});
  for (int n = 1; n <= 12; ++n) {
    const DivisorClass K = canonical_class(n);
    CHECK(intersect(n, K + zero_section(n), zero_section(n)) == Rational(-2));
    CHECK(intersect(n, K + infinity_section(n), infinity_section(n)) == Rational(-2));
    CHECK(intersect(n, K + fiber_class(n), fiber_class(n)) == Rational(-2));
    CHECK(class_volume(n, K) == Rational(8));
  }
}

TEST_CASE("section coordinates") {
  for (int n = 1; n <= 5; ++n) {
    const DivisorClass x{Rational(3, 7), Rational(-5, 2)};
    CHECK(from_sections(n, to_sections(n, x)) == x);
  }
  const SectionCoordinates<Rational> s = to_sections(1, fiber_class(1));
  CHECK(s.zn == Rational(-1));
  CHECK(s.zmn == Rational(1));
}

TEST_CASE("KEE class") {
  const double r3 = std::sqrt(3.0);
  const RealDivisorClass c = kee_class(1, 1.0, r3 - 1.0);
  CHECK(std::abs(c.a - r3) <= 1e-14);
  CHECK(std::abs(c.b - (1 + r3)) <= 1e-14);
  // c·Z₋ₙ − Zₙ with c = (2 + nβ₂)/(2 − nβ₁)
  const double cc = (2 + (r3 - 1)) / (2 - 1.0);
  const RealDivisorClass alt = cc * to_real(infinity_section(1)) - to_real(zero_section(1));
  CHECK(std::abs(alt.a - c.a) <= 1e-14);
  CHECK(std::abs(alt.b - c.b) <= 1e-14);
  CHECK(std::abs(class_volume(1, c) - (3 + 2 * r3)) <= 1e-13);
  CHECK_THROWS_AS((void)kee_class(2, 1.0, 0.5), DomainError);

  for (const auto& s : oracle::valid_samples(10, 99u)) {
    const EinsteinProfile p = make_profile(s.n, s.beta1);
    const RealDivisorClass k = kee_class(s.n, s.beta1, p.beta2());
    CHECK(is_kahler(s.n, k));
    const double cs = (2 + s.n * p.beta2()) / (2 - s.n * s.beta1);
    CHECK(std::abs(class_volume(s.n, k) - s.n * (cs * cs - 1)) <= 1e-12 * s.n * cs * cs);
  }
}

TEST_CASE("Kahler cone") {
  const DivisorClass x = Rational(-1) * zero_section(1) + Rational(2) * infinity_section(1);
  CHECK(is_kahler(1, x));
  CHECK_FALSE(is_kahler(1, zero_section(1)));
  CHECK_FALSE(is_kahler(3, fiber_class(3)));
  CHECK_FALSE(is_kahler(2, canonical_class(2)));
  // −K is ample on 𝔽₁ but only nef on 𝔽₂ (−K·Z₂ = 0)
  CHECK(is_kahler(1, Rational(-1) * canonical_class(1)));
  CHECK_FALSE(is_kahler(2, Rational(-1) * canonical_class(2)));
}

TEST_CASE("proportionality") {
  const double r3 = std::sqrt(3.0);
  CHECK(proportionality_check(1, 1.0, r3 - 1.0) <= 1e-14);
  for (const auto& s : oracle::valid_samples(20, 1u)) {
    const EinsteinProfile p = make_profile(s.n, s.beta1);
    CHECK(proportionality_check(s.n, s.beta1, p.beta2()) <= 1e-12);
  }
  CHECK(proportionality_check(1, 1.0, r3 - 1.0 + 1e-3) >= 1e-4);
  CHECK(proportionality_check(2, 0.5, make_profile(2, 0.5).beta2() - 1e-3) >= 1e-4);
}

TEST_CASE("rational arithmetic") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK_THROWS((void)Rational(1, 0));
  CHECK_THROWS((void)(Rational(INT64_MAX) * Rational(2)));
}
