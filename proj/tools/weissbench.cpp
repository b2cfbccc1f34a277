// weissbench: runs one verification suite and writes its CSV files and
// summary.json. Exit status: 0 all checks pass, 1 a check failed,
// 2 invalid configuration, 3 I/O error.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "weissbench/error.hpp"
#include "weissbench/report.hpp"
#include "weissbench/suites.hpp"

namespace {

using weissbench::Error;
using weissbench::ErrorCode;
namespace suites = weissbench::suites;

constexpr int kCheckFailed = 1;
constexpr int kConfigInvalid = 2;
constexpr int kIoError = 3;

double parse_q(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return std::numeric_limits<double>::infinity();
  double v = weissbench::report::parse_double(text);
  if (std::isnan(v)) throw Error(ErrorCode::ConfigInvalid, "--q must be a number");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for weighted-Lorentz observation estimates"};
  app.require_subcommand(1);

  suites::Config config;
  if (const char* env = std::getenv("WEISSBENCH_OUTPUT_DIR"); env && *env) config.output_dir = env;
  std::string q_text = "4";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--q", q_text, "Lorentz secondary index (default 4)");
    sub->add_option("--tol", config.tol, "Quadrature relative tolerance (default 1e-10)");
    sub->add_option("--tau", config.tau, "Upper end of the time window (default 1)");
    sub->add_option("--eps-min,--eps_min", config.eps_min, "Smallest time window start (default 1e-8)");
    sub->add_option("--output-dir,--output_dir", config.output_dir,
                    "Directory for CSV/JSON output (default $WEISSBENCH_OUTPUT_DIR or .)");
    sub->add_option("--seed", config.seed, "Seed for random corpora (default 42)");
  };

  auto* lorentz = app.add_subcommand("lorentz-norm", "L^{p,q} norm of a step-function CSV, or the closed-form suite");
  common(lorentz);
  lorentz->add_option("--input", config.input, "Step function CSV (breakpoint,value)");
  lorentz->add_option("--p", config.p, "First Lorentz index (default 2)");
  common(app.add_subcommand("orbit", "Orbit samples, decay profile and lower bounds of the witness"));
  common(app.add_subcommand("weiss-scan", "Laplace identity and Weiss-condition scans"));
  common(app.add_subcommand("counterexample", "Coefficients, orbit bounds and L^{2,q} divergence of the witness"));
  common(app.add_subcommand("bessel-check", "Bessel failure and Hilbertian estimate of the weighted basis"));
  common(app.add_subcommand("full-report", "Every suite in sequence"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigInvalid;
  }

  try {
    const auto command = suites::parse_command(app.get_subcommands().front()->get_name());
    config.q = parse_q(q_text);
    auto summary = suites::run(command, config);

    if (command == suites::Command::LorentzNorm && !config.input.empty())
      std::cout << weissbench::report::format_double(suites::lorentz_norm_of_file(config.input, config.p, config.q))
                << '\n';
    for (const auto& c : summary.checks()) std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << '\n';

    if (!summary.all_pass()) {
      for (const auto& c : summary.checks())
        if (!c.pass) std::cerr << "CHECK_FAILED " << c.name << ": " << c.details << '\n';
      return kCheckFailed;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::IoError: return kIoError;
      case ErrorCode::ConfigInvalid:
      case ErrorCode::InvalidArgument:
      case ErrorCode::Domain: return kConfigInvalid;
      default: return kCheckFailed;
    }
  }
}
