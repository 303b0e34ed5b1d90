#include "kee/limits.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <string>

namespace kee {

double beta2_series(int n, double beta1, int order) {
  check_beta1_domain(n, beta1);
  switch (order) {
    case 1:
      return beta1;
    case 2:
      return beta1 - (n / 3.0) * beta1 * beta1;
    default:
      throw DomainError("beta2_series order must be 1 or 2");
  }
}

double alpha_series(int n, double beta1, Root which) {
  check_beta1_domain(n, beta1);
  const double nb = n * beta1;
  if (which == Root::alpha2) return 1.0 + nb + nb * nb / 3.0;
  return -0.5 - nb / 4.0 + nb * nb / 24.0;
}

double rescaled_phi_y(int n, double beta1, double y) {
  check_beta1_domain(n, beta1);
  if (!(std::abs(y) * beta1 <= 1.0)) throw DomainError("rescaled_phi_y needs |y| <= 1/beta1");
  const double nb = n * beta1;
  return ((2.0 - nb) / (2.0 * n)) * (nb * nb / 4.0) * ((1.0 - beta1 * y) * (1.0 + beta1 * y));
}

RescaledFiberCoefficients rescaled_fiber_metric(const EinsteinProfile& p, double y) {
  const double b = p.beta1();
  if (!(std::abs(y) * b < 1.0)) throw DomainError("rescaled_fiber_metric needs |y| < 1/beta1");
  const double phi = p.phi(position_of_y(p, y));
  const double nb = p.n() * b;
  return {nb * nb / (8.0 * phi), 2.0 * phi / (b * b)};
}

RescaledFiberCoefficients rescaled_fiber_metric(int n, double beta1, double y) {
  return rescaled_fiber_metric(make_profile(n, beta1), y);
}

HermitianForm2 collapsed_limit_metric(int n, const ChartPoint& pt) {
  const double q = 1.0 + std::norm(pt.z);
  return {0.0, Complex(0.0, 0.0), n / (q * q)};
}

double tensor_deviation(const TauSMap& m, const ChartPoint& pt) {
  return (metric_at(m, pt) - collapsed_limit_metric(m.profile().n(), pt)).max_abs();
}

double fiber_length_asymptote(int n) {
  SurfaceIndex{n};
  return std::numbers::pi * std::sqrt(n / 2.0);
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("log_log_slope needs >= 2 pairs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(std::abs(x[i]));
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

namespace {

CollapseEntry collapse_entry(int n, double beta1, const CollapseOptions& opts) {
  const EinsteinProfile p = make_profile(n, beta1);
  CollapseEntry e;
  e.beta1 = beta1;
  e.beta2 = p.beta2();
  e.alpha2 = p.T();
  e.fiber_length = fiber_length(p, 1.0, p.T(), opts.quad);
  e.rescaled_length = e.fiber_length / beta1;
  const RescaledFiberCoefficients rc = rescaled_fiber_metric(p, opts.y_probe);
  e.rescaled_coeff_y = rc.coeff_y;
  e.rescaled_coeff_theta = rc.coeff_theta;
  const TauSMap m = build_map(p, {}, opts.quad, opts.map);
  e.tensor_deviation_at_probe = tensor_deviation(m, opts.probe);
  e.beta2_series_deviation = std::abs(p.beta2() - beta2_series(n, beta1, 2));
  e.alpha2_series_deviation = std::abs(p.alpha2() - alpha_series(n, beta1, Root::alpha2));
  e.alpha1_series_deviation = std::abs(p.alpha1() - alpha_series(n, beta1, Root::alpha1));
  return e;
}

}  // namespace

CollapseReport collapse_report(int n, std::span<const double> beta1_list,
                               const CollapseOptions& opts) {
  for (std::size_t i = 0; i < beta1_list.size(); ++i) {
    check_beta1_domain(n, beta1_list[i]);
    if (i > 0 && !(beta1_list[i] < beta1_list[i - 1]))
      throw DomainError("collapse_report needs a strictly decreasing beta1 list");
  }
  CollapseReport report;
  report.n = n;
  report.entries.resize(beta1_list.size());
  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < beta1_list.size(); ++i)
      report.entries[i] = collapse_entry(n, beta1_list[i], opts);
    return report;
  }
  std::vector<std::future<void>> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t i = t; i < beta1_list.size(); i += threads)
        report.entries[i] = collapse_entry(n, beta1_list[i], opts);
    }));
  }
  for (auto& w : workers) w.get();
  return report;
}

}  // namespace kee
