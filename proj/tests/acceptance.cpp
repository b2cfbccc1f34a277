// One line per acceptance criterion, PASS or FAIL, followed by the checks
// behind any failure. Exit status is 0 only if every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "weissbench/counterexample.hpp"
#include "weissbench/suites.hpp"

using namespace weissbench;
using suites::Check;

namespace {

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<std::vector<Check>()> body;
};

}  // namespace

int main() {
  const quadrature::QuadratureSpec spec;
  const std::uint64_t seed = 42;
  const auto q4 = counterexample::CounterexampleParams::from_q(4.0);

  const std::vector<Criterion> criteria{
      {1, "Lorentz closed forms", 30.0, [&] { return suites::lorentz_closed_forms(seed); }},
      {2, "rearrangement equimeasurability and fixed points", 10.0, [&] { return suites::rearrangement_checks(seed); }},
      {3, "Laplace identity on 20 systems x 50 lambda", 60.0, [&] { return suites::laplace_identity(seed, spec); }},
      {4, "Weiss norm and decay of the square-root model", 60.0, [&] { return suites::orthonormal_scans(); }},
      {5, "xi positivity, drift and period integrals for q in {3, 4, 8}", 300.0,
       [&] {
         std::vector<Check> all;
         for (double q : {3.0, 4.0, 8.0}) {
           auto c = suites::xi_checks(counterexample::CounterexampleParams::from_q(q), spec);
           all.insert(all.end(), c.begin(), c.end());
         }
         return all;
       }},
      {6, "orbit lower bound on n in [0, 20]", 0.0,
       [&] { return suites::orbit_bound_checks(counterexample::make_witness(q4, spec)); }},
      {7, "endpoint dichotomy of the witness orbit", 180.0,
       [&] {
         return suites::divergence_checks(counterexample::make_witness(q4, spec), {1e-2, 1e-4, 1e-6, 1e-8}, 1.0);
       }},
      {8, "basis properties (Bessel failure, Hilbertian bound, Gram diagonal)", 600.0,
       [&] { return suites::basis_checks(q4, seed, spec); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Check> checks;
    std::string error;
    try {
      checks = c.body();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    bool pass = error.empty();
    for (const auto& k : checks) pass = pass && k.pass;
    const bool in_budget = c.budget_seconds <= 0.0 || seconds <= c.budget_seconds;
    pass = pass && in_budget;
    if (!pass) ++failed;

    std::printf("criterion %d: %s  %s (%.1f s)\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(), seconds);
    for (const auto& k : checks)
      std::printf("    %s %s: %s\n", k.pass ? "ok  " : "FAIL", k.name.c_str(), k.details.c_str());
    if (!error.empty()) std::printf("    error: %s\n", error.c_str());
    if (!in_budget) std::printf("    over the %.0f s runtime budget\n", c.budget_seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
