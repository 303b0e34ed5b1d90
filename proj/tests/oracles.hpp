#pragma once
// Independent reference computations for the tests. Deliberately naive:
// none of these share code with the library.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

// Root of f on [a, b] by plain bisection; f(a) and f(b) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200 && b - a > 0.0; ++i) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// φ from integrating the ODE φ' + φ/τ = 2/n + (β₁−2/n)τ
// with φ(1) = 0:  τφ = (τ²−1)/n + (β₁−2/n)(τ³−1)/3.
inline double tau_phi_from_ode(int n, double b1, double tau) {
  return (tau * tau - 1.0) / n + (b1 - 2.0 / n) * (tau * tau * tau - 1.0) / 3.0;
}
inline double phi_from_ode(int n, double b1, double tau) {
  return tau_phi_from_ode(n, b1, tau) / tau;
}

// Upper root of φ by bisection on (1, big).
inline double upper_root(int n, double b1) {
  auto f = [&](double t) { return phi_from_ode(n, b1, t); };
  double hi = 2.0;
  while (f(hi) > 0.0) hi *= 2.0;
  return bisect(f, 1.0 + 1e-12 * hi, hi);
}

// Lower (negative) root of τφ(τ): τφ has roots 1, α₁ < 0, α₂ > 1.
inline double lower_root(int n, double b1) {
  auto f = [&](double t) { return tau_phi_from_ode(n, b1, t); };
  double lo = -1.0;
  while (f(lo) * f(0.0) > 0.0) lo *= 2.0;
  return bisect(f, lo, 0.0);
}

// Central difference with one Richardson step.
inline double derivative(const std::function<double(double)>& f, double x, double h) {
  auto d = [&](double hh) { return (f(x + hh) - f(x - hh)) / (2.0 * hh); };
  return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

// Adaptive Simpson with bisection-by-halves.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol,
                      int depth = 50) {
  std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double a0, double b0, double fa, double fm, double fb, double whole, double eps,
          int d) {
        const double m = 0.5 * (a0 + b0);
        const double lm = 0.5 * (a0 + m);
        const double rm = 0.5 * (m + b0);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - a0) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b0 - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double diff = left + right - whole;
        if (d <= 0 || std::abs(diff) <= 15.0 * eps) return left + right + diff / 15.0;
        return rec(a0, m, fa, flm, fm, left, eps / 2.0, d - 1) +
               rec(m, b0, fm, frm, fb, right, eps / 2.0, d - 1);
      };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

// Random valid (n, β₁) pairs with a fixed seed.
struct Sample {
  int n;
  double beta1;
};
inline std::vector<Sample> valid_samples(int count, unsigned seed = 20240611u) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick_n(1, 4);
  std::vector<Sample> out;
  while (static_cast<int>(out.size()) < count) {
    const int n = pick_n(rng);
    const double hi = std::min(1.0, 2.0 / n);
    std::uniform_real_distribution<double> pick_b(0.02, hi * 0.98);
    out.push_back({n, pick_b(rng)});
  }
  return out;
}

}  // namespace oracle
