#include "kee/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace kee {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

constexpr double kLn2 = 0.69314718055994530942;

}  // namespace

double GaugeChoice::resolve(const EinsteinProfile& p) const {
  const double t0 = tau0.value_or(0.5 * (1.0 + p.T()));
  if (!(t0 > 1.0 && t0 < p.T()))
    throw DomainError("gauge tau0=" + num(t0) + " must lie strictly inside (1, T)");
  return t0;
}

TauSMap::TauSMap(EinsteinProfile profile, double tau0, std::vector<double> psi,
                 std::vector<double> s, MonotoneCubic guess)
    : profile_(std::move(profile)),
      tau0_(tau0),
      psi_(std::move(psi)),
      s_(std::move(s)),
      guess_(std::move(guess)) {}

double TauSMap::ds_dpsi(double psi) const {
  const MomentumPosition x = profile_.position_from_log_odds(psi);
  return 1.0 / ((profile_.T() - 1.0) * profile_.phi_reduced(x));
}

double TauSMap::s_from_knot(std::size_t k, double psi) const {
  if (psi == psi_[k]) return s_[k];
  return s_[k] + integrate_panel([this](double t) { return ds_dpsi(t); }, psi_[k], psi).value;
}

std::vector<TauSMap::Knot> TauSMap::knots() const {
  std::vector<Knot> out;
  out.reserve(psi_.size());
  for (std::size_t k = 0; k < psi_.size(); ++k)
    out.push_back({profile_.position_from_log_odds(psi_[k]).tau, s_[k]});
  return out;
}

double TauSMap::s_of_position(const MomentumPosition& x) const {
  const double psi = profile_.log_odds(x);
  if (!(psi >= psi_.front() && psi <= psi_.back()))
    throw RangeError("tau=" + num(x.tau) + " outside the tabulated hull of the tau-s map");
  auto it = std::upper_bound(psi_.begin(), psi_.end(), psi);
  std::size_t k = static_cast<std::size_t>(it - psi_.begin()) - 1;
  k = std::min(k, psi_.size() - 1);
  return s_from_knot(k, psi);
}

MomentumPosition TauSMap::position_of_s(double s) const {
  if (!covers(s))
    throw RangeError("s=" + num(s) + " outside map hull [" + num(s_min()) + ", " +
                     num(s_max()) + "]");
  auto it = std::upper_bound(s_.begin(), s_.end(), s);
  std::size_t k = it == s_.begin() ? 0 : static_cast<std::size_t>(it - s_.begin()) - 1;
  if (k + 1 >= s_.size()) return profile_.position_from_log_odds(psi_.back());
  if (s == s_[k]) return profile_.position_from_log_odds(psi_[k]);

  double lo = psi_[k];
  double hi = psi_[k + 1];
  double psi = std::clamp(guess_(s), lo, hi);
  for (int iter = 0; iter < 60; ++iter) {
    const double f = s_from_knot(k, psi) - s;
    if (f == 0.0) break;
    if (f > 0.0) hi = psi; else lo = psi;
    double next = psi - f / ds_dpsi(psi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(psi));
    const bool done = std::abs(next - psi) <= tol;
    psi = next;
    if (done) break;
  }
  return profile_.position_from_log_odds(psi);
}

TauSMap build_map(const EinsteinProfile& p, const GaugeChoice& g, const QuadratureConfig& quad,
                  const MapOptions& opts) {
  quad.validate();
  if (!(opts.s_hull > 0.0)) throw DomainError("s_hull must be positive");
  const double tau0 = g.resolve(p);
  const double width = p.T() - 1.0;
  const MomentumPosition x0 = p.position(tau0);
  const double psi0 = p.log_odds(x0);

  auto ds_dpsi = [&p, width](double psi) {
    return 1.0 / (width * p.phi_reduced(p.position_from_log_odds(psi)));
  };
  // Graded ladder: ψ steps of ln2/8 halve an endpoint gap every eight knots;
  // for thin profiles the step is also capped at half an s-unit.
  const double step = std::min(kLn2 / 8.0, 0.5 / ds_dpsi(psi0));

  auto panel = [&](double a, double b) {
    const QuadratureResult r = integrate_panel(ds_dpsi, a, b);
    const double allowed = std::max(quad.abs_tol, quad.rel_tol * std::abs(r.value));
    if (!std::isfinite(r.value) || r.error > allowed)
      throw QuadratureError("tau-s map panel [" + num(a) + ", " + num(b) + "] error " +
                            num(r.error) + " exceeds " + num(allowed));
    return r.value;
  };

  std::vector<double> up_psi{psi0};
  std::vector<double> up_s{0.0};
  while (up_s.back() < opts.s_hull) {
    const double a = up_psi.back();
    const double b = psi0 + step * static_cast<double>(up_psi.size());
    up_s.push_back(up_s.back() + panel(a, b));
    up_psi.push_back(b);
    if (up_psi.size() > opts.max_knots)
      throw QuadratureError("tau-s map exceeded the knot budget before reaching s_hull");
  }
  std::vector<double> down_psi;
  std::vector<double> down_s;
  double prev_psi = psi0;
  double prev_s = 0.0;
  while (prev_s > -opts.s_hull) {
    const double a = psi0 - step * static_cast<double>(down_psi.size() + 1);
    prev_s -= panel(a, prev_psi);
    prev_psi = a;
    down_psi.push_back(a);
    down_s.push_back(prev_s);
    if (down_psi.size() > opts.max_knots)
      throw QuadratureError("tau-s map exceeded the knot budget before reaching s_hull");
  }

  std::vector<double> psi(down_psi.rbegin(), down_psi.rend());
  std::vector<double> s(down_s.rbegin(), down_s.rend());
  psi.insert(psi.end(), up_psi.begin(), up_psi.end());
  s.insert(s.end(), up_s.begin(), up_s.end());

  std::vector<double> slopes(psi.size());
  for (std::size_t k = 0; k < psi.size(); ++k) slopes[k] = 1.0 / ds_dpsi(psi[k]);
  MonotoneCubic guess(s, psi, std::move(slopes));
  return TauSMap(p, tau0, std::move(psi), std::move(s), std::move(guess));
}

double s_of_tau(const TauSMap& m, double tau) {
  return m.s_of_position(m.profile().position(tau));
}

double tau_of_s(const TauSMap& m, double s) { return m.position_of_s(s).tau; }

double log_slope_at_end(const TauSMap& m, End end, double s_probe) {
  if (!(std::abs(s_probe) >= 20.0))
    throw DomainError("log_slope_at_end needs |s_probe| >= 20");
  const double s = end == End::lower ? -std::abs(s_probe) : std::abs(s_probe);
  return m.profile().phi_prime(m.position_of_s(s));
}

double y_upper_limit(const EinsteinProfile& p) {
  const double b = p.beta1();
  return ((p.T() - 1.0) * 2.0 / (p.n() * b) - 1.0) / b;
}

double y_of_tau(const EinsteinProfile& p, double tau) {
  (void)p.position(tau);  // range check
  const double b = p.beta1();
  return ((tau - 1.0) * 2.0 / (p.n() * b) - 1.0) / b;
}

MomentumPosition position_of_y(const EinsteinProfile& p, double y) {
  const double b = p.beta1();
  const double ymax = y_upper_limit(p);
  if (!(y >= -1.0 / b && y <= ymax))
    throw DomainError("y=" + num(y) + " outside [-1/beta1, " + num(ymax) + "]");
  const double gap = 0.5 * p.n() * b * (1.0 + b * y);
  return p.position_from_end(End::lower, std::clamp(gap, 0.0, p.T() - 1.0));
}

double tau_of_y(const EinsteinProfile& p, double y) {
  (void)position_of_y(p, y);  // range check
  const double b = p.beta1();
  return 1.0 + 0.5 * p.n() * b * (1.0 + b * y);
}

}  // namespace kee
