#include <filesystem>

#include "doctest.h"
#include "json.hpp"
#include "weissbench/error.hpp"
#include "weissbench/report.hpp"
#include "weissbench/suites.hpp"

using namespace weissbench;
using namespace weissbench::suites;

namespace {

bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    INFO(c.name << ": " << c.details);
    CHECK(c.pass);
    if (!c.pass) return false;
  }
  return true;
}

ErrorCode code_of(Command cmd, const Config& cfg) {
  try {
    validate(cmd, cfg);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;  // "no error" marker for these tests
}

}  // namespace

TEST_CASE("eps schedule") {
  CHECK(eps_schedule(1e-8, 1.0).size() == 4);
  CHECK(eps_schedule(1e-8, 1.0).front() == 1e-2);
  CHECK(eps_schedule(1e-8, 1.0).back() == doctest::Approx(1e-8).epsilon(1e-14));
  auto odd = eps_schedule(1e-5, 1.0);
  REQUIRE(odd.size() == 3);
  CHECK(odd.back() == 1e-5);
  auto tight = eps_schedule(0.5, 1.0);
  REQUIRE(tight.size() == 2);
  CHECK(tight[0] > tight[1]);
  CHECK(tight[0] < 1.0);
}

TEST_CASE("command names") {
  for (auto c : {Command::LorentzNorm, Command::Orbit, Command::WeissScan, Command::Counterexample,
                 Command::BesselCheck, Command::FullReport})
    CHECK(parse_command(command_name(c)) == c);
  CHECK_THROWS_AS(parse_command("nope"), Error);
}

TEST_CASE("configuration validation") {
  Config cfg;
  CHECK_NOTHROW(validate(Command::Counterexample, cfg));
  cfg.q = 1.5;
  CHECK(code_of(Command::Counterexample, cfg) == ErrorCode::ConfigInvalid);
  CHECK(code_of(Command::Orbit, cfg) == ErrorCode::ConfigInvalid);
  CHECK_NOTHROW(validate(Command::LorentzNorm, cfg));
  cfg.q = 2.0;
  CHECK(code_of(Command::BesselCheck, cfg) == ErrorCode::ConfigInvalid);
  cfg = {};
  cfg.eps_min = 1.0;
  CHECK(code_of(Command::Counterexample, cfg) == ErrorCode::ConfigInvalid);
  cfg = {};
  cfg.tol = 1e-20;
  CHECK(code_of(Command::WeissScan, cfg) == ErrorCode::ConfigInvalid);
  cfg = {};
  cfg.tau = 2.0;
  CHECK(code_of(Command::Orbit, cfg) == ErrorCode::ConfigInvalid);
  cfg = {};
  cfg.p = 1.0;
  CHECK(code_of(Command::LorentzNorm, cfg) == ErrorCode::ConfigInvalid);
}

TEST_CASE("Lorentz suites pass") {
  CsvTable t({"a", "sampled_norm", "closed_form", "relative_error"});
  CHECK(all_pass(lorentz_closed_forms(42, &t)));
  CHECK(t.rows() == 4);
  CHECK(all_pass(rearrangement_checks(42)));
}

TEST_CASE("scan suites pass") {
  CHECK(all_pass(orthonormal_scans()));
  CHECK(all_pass(laplace_identity(3, {})));
}

TEST_CASE("run writes its files and a matching summary") {
  auto dir = std::filesystem::temp_directory_path() / "weissbench_suites_test";
  std::filesystem::remove_all(dir);
  Config cfg;
  cfg.output_dir = dir.string();
  auto summary = run(Command::LorentzNorm, cfg);
  CHECK(summary.all_pass());
  CHECK(std::filesystem::exists(dir / "lorentz.csv"));
  auto doc = nlohmann::json::parse(report::read_text((dir / "summary.json").string()));
  CHECK(doc["checks"].size() == summary.checks().size());
  CHECK(doc["params"]["q"] == 4.0);
  std::filesystem::remove_all(dir);
}
