#pragma once

// Verification suites behind the command-line tool. Each group returns named
// checks whose worst_slack is "tolerance minus observed" (>= 0 passes), and
// optionally fills a CSV table with the data it looked at.

#include <cstdint>
#include <string>
#include <vector>

#include "weissbench/counterexample.hpp"
#include "weissbench/quadrature.hpp"
#include "weissbench/report.hpp"

namespace weissbench::suites {

using report::Check;
using report::CsvTable;

struct Config {
  double q = 4.0;
  double tol = 1e-10;
  double tau = 1.0;
  double eps_min = 1e-8;
  std::string output_dir = ".";
  std::uint64_t seed = 42;
  // lorentz-norm only: step function file and first Lorentz index.
  std::string input;
  double p = 2.0;

  quadrature::QuadratureSpec spec() const;
};

/// Closed forms: e^{-at} in L^{2,1}, indicators in L^{p,q}, p = q against L^p.
std::vector<Check> lorentz_closed_forms(std::uint64_t seed, CsvTable* table = nullptr);
/// Equimeasurability on random dyadic step functions and fixed points.
std::vector<Check> rearrangement_checks(std::uint64_t seed);
/// Series resolvent against quadrature of the orbit on random finite systems.
std::vector<Check> laplace_identity(std::uint64_t seed, const quadrature::QuadratureSpec& spec,
                                    CsvTable* table = nullptr);
/// Weiss norm and decay of the orthonormal square-root model.
std::vector<Check> orthonormal_scans(CsvTable* weiss = nullptr, CsvTable* decay = nullptr);
/// Weiss quotients of the witness state over two nested lambda grids.
std::vector<Check> witness_weiss_checks(const counterexample::Witness& witness, CsvTable* weiss = nullptr);
/// Running sup of t^{1/2} |C T(t) x| / ||x|| as the window [eps, tau] grows toward 0.
std::vector<Check> witness_decay_checks(const counterexample::Witness& witness, double eps_min, double tau,
                                        CsvTable* decay = nullptr);
/// Positivity, drift and asymptotics of xi, and the per-period integrals.
std::vector<Check> xi_checks(const counterexample::CounterexampleParams& params,
                             const quadrature::QuadratureSpec& spec, CsvTable* table = nullptr);
/// Lower bound xi_n c_n / e on n in [0, 20] with 8 samples per interval.
std::vector<Check> orbit_bound_checks(const counterexample::Witness& witness);
/// Weak-norm stability, L^{2,q} growth slope and monotonicity.
std::vector<Check> divergence_checks(const counterexample::Witness& witness, const std::vector<double>& eps_list,
                                     double tau, CsvTable* table = nullptr);
/// Bessel failure, bounded Hilbertian estimate, diagonal Gram entries.
std::vector<Check> basis_checks(const counterexample::CounterexampleParams& params, std::uint64_t seed,
                                const quadrature::QuadratureSpec& spec, CsvTable* table = nullptr);

/// tau 10^{-2k} for k >= 1 down to eps_min, with eps_min itself as the last
/// entry; at least two entries.
std::vector<double> eps_schedule(double eps_min, double tau);

enum class Command { LorentzNorm, Orbit, WeissScan, Counterexample, BesselCheck, FullReport };

Command parse_command(const std::string& name);
std::string command_name(Command command);

/// Throws Error(ConfigInvalid) on out-of-range settings.
void validate(Command command, const Config& config);

/// Runs a suite, writes its CSV files and summary.json into output_dir and
/// returns the summary.
report::Summary run(Command command, const Config& config);

/// Norm of the step function stored at `path`.
double lorentz_norm_of_file(const std::string& path, double p, double q);

}  // namespace weissbench::suites
