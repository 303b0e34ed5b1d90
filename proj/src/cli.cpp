#include "kee/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "kee/cohomology.hpp"
#include "kee/geometry.hpp"
#include "kee/limits.hpp"

namespace kee::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBoundaryThreshold = 1e-10;
constexpr double kOdeThreshold = 1e-12;
constexpr double kResidualThreshold = 1e-5;
constexpr double kConeThreshold = 1e-3 * kTwoPi;
constexpr double kConeProbeGap = 1e-6;
constexpr double kVolumeThreshold = 1e-10;
constexpr double kProportionalityThreshold = 1e-12;
constexpr double kClassVolumeThreshold = 1e-9;
constexpr double kTIdentityThreshold = 1e-12;
constexpr int kOdeGrid = 1000;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError("--beta1-seq: empty entry in '" + text + "'");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw UsageError("--beta1-seq: cannot parse '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--beta1-seq: no values");
  return out;
}

Value rational_value(const Rational& r) {
  if (r.den() == 1) return std::int64_t{r.num()};
  return r.str();
}

QuadratureConfig quad_of(const RunConfig& c) {
  QuadratureConfig q;
  q.rel_tol = c.quad_tol;
  return q;
}

MapOptions map_of(const RunConfig& c) {
  MapOptions m;
  m.s_hull = c.s_hull;
  return m;
}

ReportRecord echo(const RunConfig& c, double beta1) {
  ReportRecord r;
  r.set("command", std::string(command_name(c.command)))
      .set("n", std::int64_t{c.n})
      .set("beta1", beta1)
      .set("grid", std::int64_t{c.grid})
      .set("fd_step", c.fd_step)
      .set("quad_tol", c.quad_tol)
      .set("s_hull", c.s_hull);
  return r;
}

double ode_residual_max(const EinsteinProfile& p) {
  double worst = 0.0;
  for (int i = 1; i <= kOdeGrid; ++i) {
    const double tau = 1.0 + (p.T() - 1.0) * i / (kOdeGrid + 1.0);
    worst = std::max(worst, std::abs(ode_residual(p, tau)));
  }
  return worst;
}

struct Entry {
  std::vector<ReportRecord> rows;
  bool passed = true;
};

Entry solve_entry(const RunConfig& c, double beta1) {
  const EinsteinProfile p = make_profile(c.n, beta1);
  const double d1 = eval_phi_prime(p, 1.0);
  const double dT = eval_phi_prime(p, p.T());
  const double boundary = std::max(std::abs(d1 - beta1), std::abs(dT + p.beta2()));
  const double ode = ode_residual_max(p);
  const RealDivisorClass cls = kee_class(c.n, beta1, p.beta2());
  Entry e;
  e.passed = boundary <= kBoundaryThreshold && ode <= kOdeThreshold;
  ReportRecord r = echo(c, beta1);
  r.set("record", std::string("solve"))
      .set("beta2", p.beta2())
      .set("lambda", p.lambda())
      .set("T", p.T())
      .set("alpha1", p.alpha1())
      .set("leading", p.leading())
      .set("phi_prime_at_1", d1)
      .set("phi_prime_at_T", dT)
      .set("boundary_residual", boundary)
      .set("boundary_threshold", kBoundaryThreshold)
      .set("ode_residual_max", ode)
      .set("ode_threshold", kOdeThreshold)
      .set("fiber_volume", fiber_volume(p, quad_of(c)))
      .set("total_volume", total_volume(p, quad_of(c)))
      .set("class_a", cls.a)
      .set("class_b", cls.b)
      .set("passed", e.passed);
  e.rows.push_back(std::move(r));
  for (int i = 0; i < c.emit_profile; ++i) {
    const double t = c.emit_profile == 1 ? 0.5 : static_cast<double>(i) / (c.emit_profile - 1);
    const double tau = i + 1 == c.emit_profile && c.emit_profile > 1 ? p.T() : 1.0 + (p.T() - 1.0) * t;
    ReportRecord s;
    s.set("command", std::string("solve"))
        .set("n", std::int64_t{c.n})
        .set("beta1", beta1)
        .set("record", std::string("profile_sample"))
        .set("sample", std::int64_t{i})
        .set("tau", tau)
        .set("phi", eval_phi(p, tau))
        .set("phi_prime", eval_phi_prime(p, tau));
    e.rows.push_back(std::move(s));
  }
  return e;
}

Entry scan_entry(const RunConfig& c, double beta1) {
  const EinsteinProfile p = make_profile(c.n, beta1);
  const double boundary = std::max(std::abs(eval_phi_prime(p, 1.0) - beta1),
                                   std::abs(eval_phi_prime(p, p.T()) + p.beta2()));
  const RealDivisorClass cls = kee_class(c.n, beta1, p.beta2());
  Entry e;
  e.passed = boundary <= kBoundaryThreshold;
  ReportRecord r = echo(c, beta1);
  r.set("beta2", p.beta2())
      .set("lambda", p.lambda())
      .set("T", p.T())
      .set("alpha1", p.alpha1())
      .set("beta2_series_deviation", std::abs(p.beta2() - beta2_series(c.n, beta1, 2)))
      .set("alpha2_series_deviation", std::abs(p.T() - alpha_series(c.n, beta1, Root::alpha2)))
      .set("alpha1_series_deviation",
           std::abs(p.alpha1() - alpha_series(c.n, beta1, Root::alpha1)))
      .set("fiber_length", fiber_length(p, 1.0, p.T(), quad_of(c)))
      .set("fiber_volume", fiber_volume(p, quad_of(c)))
      .set("class_volume", class_volume(c.n, cls))
      .set("boundary_residual", boundary)
      .set("passed", e.passed);
  e.rows.push_back(std::move(r));
  return e;
}

Entry verify_entry(const RunConfig& c, double beta1, unsigned threads) {
  const EinsteinProfile p = make_profile(c.n, beta1);
  const TauSMap m = build_map(p, {}, quad_of(c), map_of(c));
  const std::vector<ChartPoint> grid = residual_grid(c.n, c.grid, c.grid, 3);
  const double residual = einstein_residual(m, grid, c.fd_step, threads);
  const double ode = ode_residual_max(p);
  Entry e;
  e.passed = residual <= kResidualThreshold && ode <= kOdeThreshold;
  ReportRecord r = echo(c, beta1);
  r.set("beta2", p.beta2())
      .set("lambda", p.lambda())
      .set("T", p.T())
      .set("grid_points", static_cast<std::int64_t>(grid.size()))
      .set("map_knots", static_cast<std::int64_t>(m.knot_count()))
      .set("s_min", m.s_min())
      .set("s_max", m.s_max())
      .set("max_residual", residual)
      .set("residual_threshold", kResidualThreshold)
      .set("ode_residual_max", ode)
      .set("ode_threshold", kOdeThreshold)
      .set("passed", e.passed);
  e.rows.push_back(std::move(r));
  return e;
}

Entry fiber_entry(const RunConfig& c, double beta1) {
  const EinsteinProfile p = make_profile(c.n, beta1);
  const QuadratureConfig q = quad_of(c);
  const double full = fiber_length(p, 1.0, p.T(), q);
  const double mid = tau_of_y(p, 0.0);
  const double lower = cone_angle_probe(p, End::lower, 1.0 + kConeProbeGap, q);
  const double upper = cone_angle_probe(p, End::upper, p.T() - kConeProbeGap, q);
  const double volume = fiber_volume(p, q);
  const double closed = kTwoPi * (p.T() - 1.0);
  const double lower_err = std::abs(lower - kTwoPi * beta1);
  const double upper_err = std::abs(upper - kTwoPi * p.beta2());
  const double volume_err = std::abs(volume - closed) / closed;
  Entry e;
  e.passed = lower_err <= kConeThreshold && upper_err <= kConeThreshold &&
             volume_err <= kVolumeThreshold;
  ReportRecord r = echo(c, beta1);
  r.set("beta2", p.beta2())
      .set("T", p.T())
      .set("fiber_length", full)
      .set("fiber_length_asymptote", fiber_length_asymptote(c.n))
      .set("rescaled_length", full / beta1)
      .set("distance_lower_to_midsection", fiber_length(p, 1.0, mid, q))
      .set("distance_midsection_to_upper", fiber_length(p, mid, p.T(), q))
      .set("cone_probe_gap", kConeProbeGap)
      .set("cone_angle_lower", lower)
      .set("cone_angle_lower_expected", kTwoPi * beta1)
      .set("cone_angle_upper", upper)
      .set("cone_angle_upper_expected", kTwoPi * p.beta2())
      .set("cone_threshold", kConeThreshold)
      .set("fiber_volume", volume)
      .set("fiber_volume_closed_form", closed)
      .set("fiber_volume_rel_diff", volume_err)
      .set("fiber_volume_threshold", kVolumeThreshold)
      .set("passed", e.passed);
  e.rows.push_back(std::move(r));
  return e;
}

Entry classes_entry(const RunConfig& c, double beta1) {
  const EinsteinProfile p = make_profile(c.n, beta1);
  const int n = c.n;
  const RealDivisorClass cls = kee_class(n, beta1, p.beta2());
  const SectionCoordinates<double> sec = to_sections(n, cls);
  const DivisorClass K = canonical_class(n);
  const DivisorClass zn = zero_section(n);
  const DivisorClass zmn = infinity_section(n);
  const Rational adj_lower = intersect(n, K + zn, zn);
  const Rational adj_upper = intersect(n, K + zmn, zmn);
  const double prop = proportionality_check(n, beta1, p.beta2());
  const double vol_class = class_volume(n, cls);
  const double vol_quad = total_volume(p, quad_of(c));
  const double vol_err = std::abs(kTwoPi * kTwoPi * vol_class - vol_quad) / vol_quad;
  const double c_coeff = (2.0 + n * p.beta2()) / (2.0 - n * beta1);
  const double t_err = std::abs(p.T() - c_coeff);
  Entry e;
  e.passed = adj_lower == Rational(-2) && adj_upper == Rational(-2) &&
             prop <= kProportionalityThreshold && vol_err <= kClassVolumeThreshold &&
             t_err <= kTIdentityThreshold && is_kahler(n, cls);
  ReportRecord r = echo(c, beta1);
  r.set("beta2", p.beta2())
      .set("lambda", p.lambda())
      .set("T", p.T())
      .set("a", cls.a)
      .set("b", cls.b)
      .set("coeff_zn", sec.zn)
      .set("coeff_zmn", sec.zmn)
      .set("kahler", is_kahler(n, cls))
      .set("canonical_a", rational_value(K.a))
      .set("canonical_b", rational_value(K.b))
      .set("adjunction_zn", rational_value(adj_lower))
      .set("adjunction_zmn", rational_value(adj_upper))
      .set("proportionality_diff", prop)
      .set("proportionality_threshold", kProportionalityThreshold)
      .set("class_volume", vol_class)
      .set("total_volume", vol_quad)
      .set("volume_rel_diff", vol_err)
      .set("volume_threshold", kClassVolumeThreshold)
      .set("T_identity_diff", t_err)
      .set("T_identity_threshold", kTIdentityThreshold)
      .set("passed", e.passed);
  e.rows.push_back(std::move(r));
  return e;
}

template <class F>
std::vector<Entry> sweep(const std::vector<double>& values, unsigned threads, F&& one) {
  std::vector<Entry> out(values.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(values.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = one(values[i]);
    return out;
  }
  std::vector<std::future<void>> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t i = t; i < values.size(); i += threads) out[i] = one(values[i]);
    }));
  }
  for (auto& w : workers) w.get();
  return out;
}

std::vector<double> scan_values(const RunConfig& c) {
  const double hi = c.beta1_max.value_or(std::min(1.0, (2.0 / c.n) * (1.0 - 1e-3)));
  const double lo = c.beta1_min;
  std::vector<double> out;
  for (int i = 0; i < c.count; ++i) {
    const double t = static_cast<double>(i) / (c.count - 1);
    out.push_back(c.linear ? lo + (hi - lo) * t : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * t));
  }
  out.back() = hi;
  return out;
}

void add_meta(Report& r, const RunConfig& c) {
  r.meta = {{"tool", std::string("kee")},
            {"format_version", std::int64_t{1}},
            {"command", std::string(command_name(c.command))},
            {"n", std::int64_t{c.n}}};
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::solve: return "solve";
    case Command::scan: return "scan";
    case Command::verify: return "verify";
    case Command::fiber: return "fiber";
    case Command::classes: return "classes";
    case Command::limit: return "limit";
  }
  return "?";
}

RunConfig parse(const std::vector<std::string>& args) {
  CLI::App app{"Kähler–Einstein edge metrics on Hirzebruch surfaces", "kee"};
  app.require_subcommand(1, 1);

  RunConfig cfg;
  std::optional<double> beta1;
  std::string seq;
  std::string format = "json";
  std::string output;
  std::optional<double> beta1_max;

  const std::vector<std::pair<Command, std::string>> commands = {
      {Command::solve, "closed-form profile, angles, Einstein constant"},
      {Command::scan, "sweep beta1 over a log (or linear) grid"},
      {Command::verify, "finite-difference Ricci check of the Einstein equation"},
      {Command::fiber, "fiber lengths, cone angles, fiber volume"},
      {Command::classes, "cohomology classes and volume identities"},
      {Command::limit, "small-angle collapse diagnostics"}};
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [cmd, desc] : commands) {
    CLI::App* sub = app.add_subcommand(command_name(cmd), desc);
    sub->add_option("--n", cfg.n, "Hirzebruch index (>= 1)");
    sub->add_option("--beta1", beta1, "cone angle parameter along Z_n");
    sub->add_option("--beta1-seq", seq, "comma-separated beta1 values");
    sub->add_option("--grid", cfg.grid, "verify grid size G (G x G x 3 points)");
    sub->add_option("--fd-step", cfg.fd_step, "finite-difference step");
    sub->add_option("--quad-tol", cfg.quad_tol, "relative quadrature tolerance");
    sub->add_option("--s-hull", cfg.s_hull, "half-width of the tabulated s range");
    sub->add_option("--format,--out", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output,-o", output, "output file (default stdout)");
    if (cmd == Command::solve)
      sub->add_option("--emit-profile", cfg.emit_profile, "append N (tau, phi, phi') samples");
    if (cmd == Command::scan) {
      sub->add_option("--beta1-min", cfg.beta1_min, "smallest beta1");
      sub->add_option("--beta1-max", beta1_max, "largest beta1");
      sub->add_option("--count", cfg.count, "number of grid values");
      sub->add_flag("--linear", cfg.linear, "linear instead of log grid");
    }
    subs.emplace_back(cmd, sub);
  }

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("kee");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    if (msg.empty()) msg = app.help();
    throw UsageError(msg);
  }
  for (const auto& [cmd, sub] : subs)
    if (sub->parsed()) cfg.command = cmd;

  if (cfg.n < 1) throw UsageError("--n must be >= 1");
  cfg.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
  if (!output.empty()) cfg.output_path = output;
  if (beta1 && !seq.empty()) throw UsageError("give either --beta1 or --beta1-seq, not both");
  if (beta1) cfg.beta1 = {*beta1};
  if (!seq.empty()) cfg.beta1 = parse_list(seq);
  if (cfg.command != Command::scan && cfg.beta1.empty())
    throw UsageError(std::string(command_name(cfg.command)) + ": --beta1 or --beta1-seq is required");
  for (const double b : cfg.beta1) {
    try {
      check_beta1_domain(cfg.n, b);
    } catch (const DomainError& e) {
      throw UsageError(std::string("--beta1: ") + e.what());
    }
  }
  if (cfg.command == Command::limit) {
    for (std::size_t i = 1; i < cfg.beta1.size(); ++i)
      if (!(cfg.beta1[i] < cfg.beta1[i - 1]))
        throw UsageError("limit: --beta1-seq must be strictly decreasing");
  }
  if (cfg.grid < 1) throw UsageError("--grid must be >= 1");
  if (!(cfg.fd_step > 0.0)) throw UsageError("--fd-step must be positive");
  if (!(cfg.quad_tol > 0.0)) throw UsageError("--quad-tol must be positive");
  if (!(cfg.s_hull > 0.0)) throw UsageError("--s-hull must be positive");
  if (cfg.emit_profile < 0) throw UsageError("--emit-profile must be >= 0");
  if (cfg.command == Command::scan) {
    if (!cfg.beta1.empty())
      throw UsageError("scan takes --beta1-min/--beta1-max/--count, not --beta1 or --beta1-seq");
    cfg.beta1_max = beta1_max;
    if (cfg.count < 2) throw UsageError("--count must be >= 2");
    try {
      check_beta1_domain(cfg.n, cfg.beta1_min);
      if (cfg.beta1_max) check_beta1_domain(cfg.n, *cfg.beta1_max);
    } catch (const DomainError& e) {
      throw UsageError(std::string("scan range: ") + e.what());
    }
    if (cfg.beta1_max && !(*cfg.beta1_max > cfg.beta1_min))
      throw UsageError("--beta1-max must exceed --beta1-min");
  }
  return cfg;
}

unsigned threads_from_env() {
  const char* raw = std::getenv("KEE_THREADS");
  if (raw == nullptr || *raw == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096)
    throw UsageError("KEE_THREADS must be a positive integer");
  return static_cast<unsigned>(v);
}

RunResult run(const RunConfig& c) {
  RunResult result;
  add_meta(result.report, c);
  std::vector<Entry> entries;
  switch (c.command) {
    case Command::solve:
      entries = sweep(c.beta1, c.threads, [&](double b) { return solve_entry(c, b); });
      break;
    case Command::scan:
      entries = sweep(scan_values(c), c.threads, [&](double b) { return scan_entry(c, b); });
      break;
    case Command::verify: {
      const unsigned inner = c.beta1.size() == 1 ? c.threads : 1;
      entries = sweep(c.beta1, c.threads, [&](double b) { return verify_entry(c, b, inner); });
      result.report.meta.emplace_back("residual_threshold", kResidualThreshold);
      break;
    }
    case Command::fiber:
      entries = sweep(c.beta1, c.threads, [&](double b) { return fiber_entry(c, b); });
      break;
    case Command::classes:
      entries = sweep(c.beta1, c.threads, [&](double b) { return classes_entry(c, b); });
      break;
    case Command::limit: {
      CollapseOptions opts;
      opts.quad = quad_of(c);
      opts.map = map_of(c);
      opts.threads = c.threads;
      const CollapseReport rep = collapse_report(c.n, c.beta1, opts);
      result.report.meta.emplace_back("fiber_length_asymptote", fiber_length_asymptote(c.n));
      for (const CollapseEntry& x : rep.entries) {
        ReportRecord r = echo(c, x.beta1);
        r.set("beta2", x.beta2)
            .set("alpha2", x.alpha2)
            .set("fiber_length", x.fiber_length)
            .set("fiber_length_error", std::abs(x.fiber_length - fiber_length_asymptote(c.n)))
            .set("rescaled_length", x.rescaled_length)
            .set("rescaled_coeff_y", x.rescaled_coeff_y)
            .set("rescaled_coeff_theta", x.rescaled_coeff_theta)
            .set("tensor_deviation_at_probe", x.tensor_deviation_at_probe)
            .set("beta2_series_deviation", x.beta2_series_deviation)
            .set("alpha2_series_deviation", x.alpha2_series_deviation)
            .set("alpha1_series_deviation", x.alpha1_series_deviation);
        Entry e;
        e.rows.push_back(std::move(r));
        entries.push_back(std::move(e));
      }
      break;
    }
  }
  for (auto& e : entries) {
    if (!e.passed) result.exit_status = 1;
    for (auto& r : e.rows) result.report.rows.push_back(std::move(r));
  }
  sort_rows(result.report.rows);
  return result;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse(args);
    cfg.threads = threads_from_env();
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  RunResult result;
  try {
    result = run(cfg);
  } catch (const std::exception& e) {
    result = {};
    add_meta(result.report, cfg);
    ReportRecord r;
    r.set("command", std::string(command_name(cfg.command)))
        .set("n", std::int64_t{cfg.n})
        .set("error", std::string(e.what()));
    result.report.rows.push_back(std::move(r));
    result.exit_status = 1;
    err << "error: " << e.what() << '\n';
  }
  try {
    emit(result.report, cfg.format, cfg.output_path, out);
  } catch (const IOError& e) {
    err << "io error: " << e.what() << '\n';
    return 3;
  }
  return result.exit_status;
}

}  // namespace kee::cli
