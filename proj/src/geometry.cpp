#include "kee/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

namespace kee {

namespace {

constexpr double kPi = std::numbers::pi;

std::string describe(const ChartPoint& pt) {
  std::ostringstream os;
  os.precision(17);
  os << "(z=" << pt.z << ", w=" << pt.w << ")";
  return os.str();
}

// log det g as a function of the stencil coordinates.
double log_det(const TauSMap& m, double rho, double theta, double x, double y) {
  const ChartPoint pt(Complex(x, y), std::polar(std::exp(rho), theta));
  return std::log(metric_at(m, pt).det());
}

struct Hessian4 {
  // second derivatives in (ρ, θ, x, y)
  double rr, tt, xx, yy, rx, ry, tx, ty;
};

Hessian4 hessian(const TauSMap& m, double rho, double theta, double x, double y, double h) {
  const std::array<double, 4> c{rho, theta, x, y};
  auto f = [&](int i, double di, int j, double dj) {
    std::array<double, 4> q = c;
    q[i] += di;
    q[j] += dj;
    return log_det(m, q[0], q[1], q[2], q[3]);
  };
  const double f0 = log_det(m, rho, theta, x, y);
  auto pure = [&](int i) { return (f(i, h, i, 0.0) - 2.0 * f0 + f(i, -h, i, 0.0)) / (h * h); };
  auto mixed = [&](int i, int j) {
    return (f(i, h, j, h) - f(i, h, j, -h) - f(i, -h, j, h) + f(i, -h, j, -h)) / (4.0 * h * h);
  };
  return {pure(0), pure(1), pure(2), pure(3), mixed(0, 2), mixed(0, 3), mixed(1, 2), mixed(1, 3)};
}

HermitianForm2 ricci_from_hessian(const Hessian4& H, const Complex& w) {
  // ∂_w = w⁻¹ ∂_v with v = ρ + iθ; ∂_v∂_v̄ = ¼Δ, ∂_v∂_z̄ = ¼(∂_ρ − i∂_θ)(∂_x + i∂_y).
  HermitianForm2 r;
  r.ww = -0.25 * (H.rr + H.tt) / std::norm(w);
  r.wz = -0.25 * Complex(H.rx + H.ty, H.ry - H.tx) / w;
  r.zz = -0.25 * (H.xx + H.yy);
  return r;
}

// Integral of dτ/√(2φ) on a piece adjacent to one end, via τ = end ± v².
double length_near_end(const EinsteinProfile& p, End end, double gap_a, double gap_b,
                       const QuadratureConfig& quad) {
  if (gap_b <= gap_a) return 0.0;
  const double width = p.T() - 1.0;
  auto integrand = [&p, end, width](double v) {
    const MomentumPosition x = p.position_from_end(end, std::min(v * v, width));
    const double other = end == End::lower ? x.upper_gap : x.lower_gap;
    return 2.0 / std::sqrt(2.0 * other * p.phi_reduced(x));
  };
  return integrate(integrand, std::sqrt(gap_a), std::sqrt(gap_b), quad, "fiber length").value;
}

}  // namespace

ChartPoint::ChartPoint(Complex z_, Complex w_) : z(z_), w(w_) {
  if (w == Complex(0.0, 0.0)) throw DomainError("chart point needs w != 0");
}

double ChartPoint::s(int n) const {
  return std::log(std::norm(w)) + n * std::log1p(std::norm(z));
}

std::array<double, 2> HermitianForm2::eigenvalues() const {
  const double mean = 0.5 * (ww + zz);
  const double rad = std::hypot(0.5 * (ww - zz), std::abs(wz));
  return {mean - rad, mean + rad};
}

double HermitianForm2::max_abs() const {
  return std::max({std::abs(ww), std::abs(wz), std::abs(zz)});
}

HermitianForm2 metric_from_position(const EinsteinProfile& p, const MomentumPosition& x,
                                    const ChartPoint& pt) {
  const double n = p.n();
  const double phi = p.phi(x);
  const double z2 = std::norm(pt.z);
  const double q = 1.0 + z2;
  HermitianForm2 g;
  g.ww = phi / std::norm(pt.w);
  g.wz = n * phi * pt.z / (pt.w * q);
  g.zz = (n * x.tau + n * n * phi * z2) / (q * q);
  if (!(g.eigenvalues()[0] > 0.0))
    throw PositivityError("metric not positive definite at " + describe(pt));
  return g;
}

HermitianForm2 metric_at(const TauSMap& m, const ChartPoint& pt) {
  const MomentumPosition x = m.position_of_s(pt.s(m.profile().n()));
  return metric_from_position(m.profile(), x, pt);
}

HermitianForm2 ricci_fd(const TauSMap& m, const ChartPoint& pt, double step, bool richardson) {
  if (!(step > 0.0)) throw DomainError("fd step must be positive");
  const double s = pt.s(m.profile().n());
  const double margin = 4.0 * step;
  if (!m.covers(s - margin) || !m.covers(s + margin))
    throw RangeError("FD stencil at " + describe(pt) + " leaves the map hull");
  const double rho = std::log(std::abs(pt.w));
  const double theta = std::arg(pt.w);
  const double x = pt.z.real();
  const double y = pt.z.imag();
  const HermitianForm2 coarse = ricci_from_hessian(hessian(m, rho, theta, x, y, step), pt.w);
  if (!richardson) return coarse;
  const HermitianForm2 fine = ricci_from_hessian(hessian(m, rho, theta, x, y, 0.5 * step), pt.w);
  return {(4.0 * fine.ww - coarse.ww) / 3.0, (4.0 * fine.wz - coarse.wz) / 3.0,
          (4.0 * fine.zz - coarse.zz) / 3.0};
}

double einstein_residual(const TauSMap& m, std::span<const ChartPoint> grid, double step,
                         unsigned threads) {
  const double lambda = m.profile().lambda();
  auto one = [&](const ChartPoint& pt) {
    try {
      return (ricci_fd(m, pt, step) - lambda * metric_at(m, pt)).max_abs();
    } catch (const RangeError& e) {
      throw RangeError(std::string("einstein_residual at ") + describe(pt) + ": " + e.what());
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));
  if (threads == 1) {
    double worst = 0.0;
    for (const auto& pt : grid) worst = std::max(worst, one(pt));
    return worst;
  }
  std::vector<std::future<double>> parts;
  for (unsigned t = 0; t < threads; ++t) {
    parts.push_back(std::async(std::launch::async, [&, t] {
      double worst = 0.0;
      for (std::size_t i = t; i < grid.size(); i += threads) worst = std::max(worst, one(grid[i]));
      return worst;
    }));
  }
  double worst = 0.0;
  for (auto& f : parts) worst = std::max(worst, f.get());
  return worst;
}

std::vector<ChartPoint> residual_grid(int n, int n_abs, int n_arg, int n_s, double s_span) {
  if (n_abs < 1 || n_arg < 1 || n_s < 1) throw DomainError("grid sizes must be positive");
  std::vector<ChartPoint> grid;
  grid.reserve(static_cast<std::size_t>(n_abs * n_arg * n_s));
  for (int i = 0; i < n_abs; ++i) {
    const double r = n_abs == 1 ? 0.8 : 0.2 + 1.2 * i / (n_abs - 1);
    for (int j = 0; j < n_arg; ++j) {
      const Complex z = std::polar(r, 0.1 + 2.0 * kPi * j / n_arg);
      for (int k = 0; k < n_s; ++k) {
        const double s = n_s == 1 ? 0.0 : -s_span + 2.0 * s_span * k / (n_s - 1);
        const double abs_w = std::exp(0.5 * (s - n * std::log1p(r * r)));
        grid.emplace_back(z, std::polar(abs_w, 0.3));
      }
    }
  }
  return grid;
}

FiberMetricSample fiber_metric_sample(const EinsteinProfile& p, double tau) {
  const double phi = eval_phi(p, tau);
  return {tau, 1.0 / (2.0 * phi), 2.0 * phi};
}

double fiber_length(const EinsteinProfile& p, double tau_a, double tau_b,
                    const QuadratureConfig& quad) {
  if (!(tau_a >= 1.0 && tau_a <= tau_b && tau_b <= p.T()))
    throw DomainError("fiber_length needs 1 <= tau_a <= tau_b <= T");
  if (tau_a == tau_b) return 0.0;
  const double mid = 0.5 * (1.0 + p.T());
  double total = 0.0;
  if (tau_a < mid)
    total += length_near_end(p, End::lower, tau_a - 1.0, std::min(tau_b, mid) - 1.0, quad);
  if (tau_b > mid)
    total += length_near_end(p, End::upper, p.T() - tau_b, p.T() - std::max(tau_a, mid), quad);
  return total;
}

double cone_angle_probe(const EinsteinProfile& p, End end, double tau_probe,
                        const QuadratureConfig& quad) {
  const MomentumPosition x = p.position(tau_probe);
  if (!(x.lower_gap > 0.0 && x.upper_gap > 0.0))
    throw DomainError("cone_angle_probe needs tau strictly inside (1, T)");
  const double radius = end == End::lower ? fiber_length(p, 1.0, tau_probe, quad)
                                          : fiber_length(p, tau_probe, p.T(), quad);
  return 2.0 * kPi * std::sqrt(2.0 * p.phi(x)) / radius;
}

double fiber_volume(const EinsteinProfile& p, const QuadratureConfig& quad) {
  auto area_density = [&p](double tau) {
    const MomentumPosition x = p.position(tau);
    const double phi = p.phi(x);
    return std::sqrt((1.0 / (2.0 * phi)) * (2.0 * phi));
  };
  const double radial = integrate(area_density, 1.0, p.T(), quad, "fiber volume").value;
  const double angular =
      integrate([](double) { return 1.0; }, 0.0, 2.0 * kPi, quad, "fiber angle").value;
  return radial * angular;
}

double total_volume(const EinsteinProfile& p, const QuadratureConfig& quad) {
  const double base =
      integrate([](double r) { return 4.0 * kPi * r / ((1.0 + r * r) * (1.0 + r * r)); }, 0.0,
                std::numeric_limits<double>::infinity(), quad, "base volume")
          .value;
  const double n = p.n();
  const double fiber =
      2.0 * kPi * integrate([n](double tau) { return n * tau; }, 1.0, p.T(), quad, "fiber").value;
  return 2.0 * base * fiber;
}

}  // namespace kee
