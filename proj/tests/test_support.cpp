#include <doctest.h>

#include <cmath>

#include "kee/monotone_cubic.hpp"
#include "kee/quadrature.hpp"
#include "oracles.hpp"

using namespace kee;

TEST_CASE("monotone cubic interpolates and stays monotone") {
  std::vector<double> x = {0, 1, 2, 3, 4, 5};
  std::vector<double> y = {0, 0.1, 0.2, 5, 5.1, 9};
  const MonotoneCubic c(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(c(x[i]) == doctest::Approx(y[i]));
  double prev = -1;
  for (double t = 0; t <= 5; t += 0.001) {
    const double v = c(t);
    CHECK(v >= prev);
    prev = v;
  }
  for (double v : {0.05, 1.0, 4.9, 8.5}) CHECK(std::abs(c(c.inverse(v)) - v) <= 1e-12);
  CHECK_THROWS((void)MonotoneCubic({0, 1, 1}, {0, 1, 2}));
  CHECK_THROWS((void)MonotoneCubic({0, 1, 2}, {0, 2, 1}));
}

TEST_CASE("monotone cubic reproduces smooth data") {
  std::vector<double> x, y;
  for (int i = 0; i <= 200; ++i) {
    x.push_back(i * 0.01);
    y.push_back(std::exp(x.back()));
  }
  const MonotoneCubic c(x, y);
  CHECK(std::abs(c(1.234) - std::exp(1.234)) <= 1e-6);
  CHECK(std::abs(c.derivative(1.234) - std::exp(1.234)) <= 1e-3);
}

TEST_CASE("quadrature") {
  const auto r = integrate([](double t) { return std::sin(t); }, 0.0, M_PI, {});
  CHECK(std::abs(r.value - 2.0) <= 1e-13);
  CHECK(r.error <= 1e-10);
  const auto f = [](double t) { return 1.0 / (1.0 + t * t); };
  CHECK(std::abs(integrate(f, 0.0, 3.0, {}).value - oracle::simpson(f, 0.0, 3.0, 1e-14)) <= 1e-12);
  QuadratureConfig bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS((void)integrate(f, 0.0, 1.0, bad), DomainError);
  QuadratureConfig tight;
  tight.rel_tol = 1e-15;
  tight.abs_tol = 1e-300;
  tight.max_depth = 1;
  CHECK_THROWS_AS(
      (void)integrate([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, tight), QuadratureError);
}
