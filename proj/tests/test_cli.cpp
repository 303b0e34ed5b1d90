#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "kee/cli.hpp"

using namespace kee;
using namespace kee::cli;

namespace {
struct Outcome {
  int status;
  std::string out;
  std::string err;
};
Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = main_entry(args, out, err);
  return {status, out.str(), err.str()};
}
}  // namespace

TEST_CASE("parse examples") {
  const RunConfig a = parse({"solve", "--n", "1", "--beta1", "1.0", "--format", "json"});
  CHECK(a.command == Command::solve);
  CHECK(a.n == 1);
  CHECK(a.beta1 == std::vector<double>{1.0});
  CHECK(a.format == OutputFormat::json);

  const RunConfig b = parse({"limit", "--n", "2", "--beta1-seq", "0.2,0.1,0.05", "--out", "csv"});
  CHECK(b.command == Command::limit);
  CHECK(b.n == 2);
  CHECK(b.beta1 == std::vector<double>{0.2, 0.1, 0.05});
  CHECK(b.format == OutputFormat::csv);
  CHECK(b.fd_step == 1e-3);
  CHECK(b.quad_tol == 1e-10);
  CHECK(b.s_hull == 40.0);

  try {
    (void)parse({"solve", "--n", "3", "--beta1", "0.7"});
    FAIL("expected a usage error");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("beta1 must lie in (0, 2/n) ∩ (0,1]") != std::string::npos);
  }
}

TEST_CASE("usage errors exit 2 and name the flag") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"bogus"},
           {"solve", "--n", "1"},
           {"solve", "--n", "0", "--beta1", "0.5"},
           {"solve", "--n", "1", "--beta1", "abc"},
           {"solve", "--n", "1", "--beta1", "0.5", "--format", "xml"},
           {"verify", "--n", "1", "--beta1", "0.5", "--fd-step", "-1"},
           {"limit", "--n", "1", "--beta1-seq", "0.1,0.2"},
           {"solve", "--n", "1", "--beta1", "0.5", "--frobnicate"}}) {
    const Outcome o = call(args);
    CHECK(o.status == 2);
    CHECK(o.out.empty());
  }
  CHECK(call({"solve", "--n", "1", "--beta1", "0.5", "--fd-step", "-1"}).err.find("--fd-step") !=
        std::string::npos);
  CHECK(call({"solve", "--n", "1", "--beta1", "0.5", "--frobnicate"}).err.find("--frobnicate") !=
        std::string::npos);
  CHECK(call({"--help"}).status == 0);
}

TEST_CASE("solve reports the rigid angle") {
  const Outcome o = call({"solve", "--n", "1", "--beta1", "1.0"});
  CHECK(o.status == 0);
  const auto j = nlohmann::json::parse(o.out);
  const auto& r = j["rows"][0];
  // correctly rounded √3 − 1
  CHECK(r["beta2"].get<double>() == 0.73205080756887729);
  CHECK(std::abs(r["beta2"].get<double>() - (std::sqrt(3.0) - 1.0)) <= 1e-12);
  for (const char* key : {"command", "n", "beta1", "grid", "fd_step", "quad_tol", "s_hull"})
    CHECK(r.contains(key));
  CHECK(r["boundary_threshold"].get<double>() == 1e-10);
}

TEST_CASE("emit-profile appends samples") {
  const Outcome o = call({"solve", "--n", "2", "--beta1", "0.5", "--emit-profile", "5"});
  const auto j = nlohmann::json::parse(o.out);
  REQUIRE(j["rows"].size() == 6);
  int samples = 0;
  for (const auto& r : j["rows"])
    if (r["record"] == "profile_sample") ++samples;
  CHECK(samples == 5);
}

TEST_CASE("verify, classes, fiber, scan") {
  const Outcome v = call({"verify", "--n", "2", "--beta1", "0.6", "--grid", "5", "--fd-step", "1e-3"});
  CHECK(v.status == 0);
  const auto jv = nlohmann::json::parse(v.out);
  CHECK(jv["rows"][0]["max_residual"].get<double>() <= 1e-5);
  CHECK(jv["rows"][0]["grid_points"].get<int>() == 75);

  const Outcome c = call({"classes", "--n", "1", "--beta1", "1.0"});
  CHECK(c.status == 0);
  const auto jc = nlohmann::json::parse(c.out)["rows"][0];
  CHECK(std::abs(jc["a"].get<double>() - std::sqrt(3.0)) <= 1e-12);
  CHECK(std::abs(jc["b"].get<double>() - 1 - std::sqrt(3.0)) <= 1e-12);
  CHECK(jc["proportionality_diff"].get<double>() <= 1e-12);

  CHECK(call({"fiber", "--n", "2", "--beta1", "0.5"}).status == 0);

  const Outcome s = call({"scan", "--n", "2", "--count", "7", "--format", "csv"});
  CHECK(s.status == 0);
  CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 8);
}

TEST_CASE("a failed threshold exits 1 with the threshold echoed") {
  // a coarse step pushes the FD residual above its threshold
  const Outcome o = call({"verify", "--n", "1", "--beta1", "0.5", "--grid", "2", "--fd-step", "0.3"});
  CHECK(o.status == 1);
  const auto r = nlohmann::json::parse(o.out)["rows"][0];
  CHECK(r["passed"] == false);
  CHECK(r["residual_threshold"].get<double>() == 1e-5);
}

TEST_CASE("module errors become structured records") {
  const Outcome o = call({"verify", "--n", "1", "--beta1", "0.5", "--s-hull", "1"});
  CHECK(o.status == 1);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["rows"][0].contains("error"));
}

TEST_CASE("io errors exit 3") {
  CHECK(call({"solve", "--n", "1", "--beta1", "0.5", "-o", "/nonexistent-dir/out.json"}).status == 3);
}

TEST_CASE("determinism across runs") {
  const std::vector<std::string> args = {"limit", "--n", "1", "--beta1-seq", "0.2,0.1,0.05"};
  CHECK(call(args).out == call(args).out);
}
