#include "weissbench/suites.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>

#include "weissbench/error.hpp"
#include "weissbench/lorentz.hpp"
#include "weissbench/semigroup.hpp"

namespace weissbench::suites {

namespace {

using counterexample::CounterexampleParams;
using counterexample::Lcg64;
using counterexample::Witness;
using lorentz::LorentzIndex;
using lorentz::StepFunction;
using report::format_double;
using semigroup::Complex;

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

Check make_check(std::string name, double slack, std::string details) {
  // NaN slack fails.
  return Check{std::move(name), slack >= 0.0, slack, std::move(details)};
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Random step function on [0, L] with dyadic lengths k/64 and values j/8, so
// every sum of lengths the distribution function forms is exact.
StepFunction dyadic_step(Lcg64& rng) {
  const std::size_t n = 1 + rng.next() % 40;
  std::vector<double> b{0.0}, v;
  for (std::size_t i = 0; i < n; ++i) {
    b.push_back(b.back() + static_cast<double>(1 + rng.next() % 64) / 64.0);
    v.push_back(static_cast<double>(rng.next() % 24) / 8.0);
  }
  return StepFunction(std::move(b), std::move(v));
}

StepFunction random_step(Lcg64& rng) {
  const std::size_t n = 1 + rng.next() % 50;
  std::vector<double> b{rng.uniform(0.0, 1.0)}, v;
  for (std::size_t i = 0; i < n; ++i) {
    b.push_back(b.back() + rng.uniform(0.01, 1.0));
    v.push_back(rng.uniform(0.0, 10.0));
  }
  return StepFunction(std::move(b), std::move(v));
}

double sup_of(const std::vector<semigroup::DecaySample>& s) { return semigroup::sup_value(s); }

void write_table(const CsvTable& table, const Config& config, const std::string& name) {
  table.write((std::filesystem::path(config.output_dir) / name).string());
}

}  // namespace

quadrature::QuadratureSpec Config::spec() const {
  quadrature::QuadratureSpec s;
  s.relative_tolerance = tol;
  return s;
}

std::vector<Check> lorentz_closed_forms(std::uint64_t seed, CsvTable* table) {
  std::vector<Check> out;

  // ||e^{-at}||_{2,1} on (0, inf) = Gamma(1/2) a^{-1/2}; 10^6 midpoint steps on [0, 40/a].
  double worst = 0.0;
  std::string details;
  for (double a : {0.5, 1.0, 2.0, 10.0}) {
    const std::size_t n = 1000000;
    const double len = 40.0 / a;
    std::vector<double> breaks(n + 1);
    for (std::size_t i = 0; i <= n; ++i) breaks[i] = len * static_cast<double>(i) / static_cast<double>(n);
    auto f = StepFunction::sample([a](double t) { return std::exp(-a * t); }, breaks,
                                  StepFunction::SamplePoint::Midpoint);
    const double norm = lorentz::lorentz_norm(f, LorentzIndex(2.0, 1.0));
    const double exact = std::sqrt(kPi / a);
    const double err = rel_diff(norm, exact);
    worst = std::max(worst, err);
    details += "a=" + format_double(a) + " rel=" + format_double(err) + "; ";
    if (table) table->add_row({a, norm, exact, err});
  }
  out.push_back(make_check("exp_decay_l21", 1e-5 - worst, details));

  worst = 0.0;
  for (double p : {1.5, 2.0, 3.0, 5.0}) {
    for (double q : {1.0, 1.5, 2.0, 4.0, kInf}) {
      for (double measure : {0.5, 1.0, 3.75}) {
        StepFunction f({0.0, 0.25, 0.25 + measure, 0.5 + measure}, {0.0, 1.0, 0.0});
        const double exact = std::isinf(q) ? std::pow(measure, 1.0 / p)
                                           : std::pow(p / q, 1.0 / q) * std::pow(measure, 1.0 / p);
        worst = std::max(worst, rel_diff(lorentz::lorentz_norm(f, LorentzIndex(p, q)), exact));
      }
    }
  }
  out.push_back(make_check("indicator_closed_form", 1e-12 - worst, "max rel=" + format_double(worst)));

  Lcg64 rng(seed);
  worst = 0.0;
  const double ps[] = {1.25, 2.0, 3.0, 4.5};
  for (int i = 0; i < 200; ++i) {
    auto f = random_step(rng);
    const double p = ps[i % 4];
    double direct = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) direct += std::pow(f.values()[k], p) * f.length(k);
    direct = std::pow(direct, 1.0 / p);
    worst = std::max(worst, rel_diff(lorentz::lorentz_norm(f, LorentzIndex(p, p)), direct));
  }
  out.push_back(make_check("p_equals_q_direct", 1e-12 - worst, "200 functions, max rel=" + format_double(worst)));
  return out;
}

std::vector<Check> rearrangement_checks(std::uint64_t seed) {
  Lcg64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::size_t mismatches = 0, evaluations = 0;
  for (int i = 0; i < 500; ++i) {
    auto f = dyadic_step(rng);
    auto r = lorentz::decreasing_rearrangement(f);
    std::vector<double> alphas{0.0, 100.0};
    for (double v : f.values()) {
      alphas.push_back(v);
      alphas.push_back(v + 1.0 / 16.0);
      if (v > 0.0) alphas.push_back(v - 1.0 / 16.0);
    }
    for (double a : alphas) {
      ++evaluations;
      if (lorentz::distribution_function(f, a) != lorentz::distribution_function(r, a)) ++mismatches;
    }
  }
  std::vector<Check> out;
  out.push_back(make_check("equimeasurable", 0.0 - static_cast<double>(mismatches),
                           std::to_string(mismatches) + " mismatches in " + std::to_string(evaluations) +
                               " evaluations"));

  std::size_t moved = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng.next() % 30;
    std::vector<double> b{0.0}, v;
    double level = 50.0;
    for (std::size_t k = 0; k < n; ++k) {
      b.push_back(b.back() + rng.uniform(0.01, 1.0));
      level -= rng.uniform(0.01, 1.0);
      v.push_back(level);
    }
    StepFunction f(b, v);
    auto r = lorentz::decreasing_rearrangement(f);
    if (!std::ranges::equal(r.breakpoints(), f.breakpoints()) || !std::ranges::equal(r.values(), f.values())) ++moved;
  }
  out.push_back(make_check("decreasing_fixed_point", 0.0 - static_cast<double>(moved),
                           std::to_string(moved) + " of 200 decreasing inputs changed"));
  return out;
}

std::vector<Check> laplace_identity(std::uint64_t seed, const quadrature::QuadratureSpec& spec, CsvTable* table) {
  Lcg64 rng(seed + 1);
  std::vector<Complex> grid;
  for (int i = 0; i < 10; ++i) {
    const double r = std::pow(10.0, -2.0 + 4.0 * i / 9.0);
    for (double s : {-1.0, -0.5, 0.0, 0.5, 1.0}) grid.push_back(std::polar(r, s * (kPi / 2 - 0.01)));
  }
  double worst = 0.0;
  std::string where;
  for (int sys_id = 0; sys_id < 20; ++sys_id) {
    const std::size_t n = 1 + rng.next() % 8;
    std::vector<double> mu, c, xi;
    double m = rng.uniform(0.1, 2.0);
    for (std::size_t k = 0; k < n; ++k) {
      mu.push_back(m);
      m *= rng.uniform(1.5, 4.0);
      c.push_back(rng.uniform(-2.0, 2.0));
      xi.push_back(rng.uniform(-1.0, 1.0));
    }
    auto sys = semigroup::DiagonalSystem::finite(mu, c);
    auto coeffs = semigroup::CoefficientVector::finite(xi);
    for (Complex lambda : grid) {
      auto series = semigroup::resolvent_observation(sys, coeffs, lambda, 1e-14).value;
      const double cutoff = semigroup::laplace_cutoff(sys, coeffs, lambda, 1e-14);
      auto quad = semigroup::laplace_of_orbit(sys, coeffs, lambda, cutoff, spec).value;
      const double err = std::abs(series - quad) / std::abs(series);
      if (!(err <= worst)) {
        worst = err;
        where = "system " + std::to_string(sys_id) + ", lambda=" + format_double(lambda.real()) + "+" +
                format_double(lambda.imag()) + "i";
      }
      if (table)
        table->add_row({static_cast<double>(sys_id), lambda.real(), lambda.imag(), series.real(), series.imag(),
                        quad.real(), quad.imag(), err});
    }
  }
  return {make_check("laplace_identity", 1e-6 - worst,
                     "20 systems x 50 lambda, max rel=" + format_double(worst) + " at " + where)};
}

std::vector<Check> orthonormal_scans(CsvTable* weiss, CsvTable* decay) {
  auto sys = semigroup::DiagonalSystem::square_root_observation();
  std::vector<Check> out;

  auto coarse = semigroup::weiss_scan_orthonormal(sys, semigroup::lambda_grid(8, 17));
  auto fine = semigroup::weiss_scan_orthonormal(sys, semigroup::lambda_grid(16, 33));
  const double s1 = semigroup::sup_value(coarse), s2 = semigroup::sup_value(fine);
  const double change = rel_diff(s2, s1);
  out.push_back(make_check("orthonormal_weiss_sup_stable", std::isfinite(s2) ? 0.05 - change : -kInf,
                           "sup " + format_double(s1) + " -> " + format_double(s2)));
  if (weiss) *weiss = semigroup::weiss_table(coarse);

  auto profile = [&](int per_decade) {
    std::vector<semigroup::DecaySample> s;
    for (double t : semigroup::log_grid(1e-8, 1.0, per_decade))
      s.push_back({t, std::sqrt(t) * semigroup::orbit_norm_orthonormal(sys, t)});
    return s;
  };
  auto d1 = profile(16), d2 = profile(32);
  const double k1 = sup_of(d1), k2 = sup_of(d2);
  out.push_back(make_check("orthonormal_decay_bounded", std::isfinite(k2) ? 0.05 - rel_diff(k2, k1) : -kInf,
                           "sup t^{1/2}||CT(t)|| on [1e-8, 1]: " + format_double(k1) + " -> " + format_double(k2)));
  if (decay) *decay = semigroup::decay_table(d1);
  return out;
}

std::vector<Check> witness_weiss_checks(const Witness& witness, CsvTable* weiss) {
  auto coarse = semigroup::weiss_scan(witness.system, witness.xi, witness.x_norm, semigroup::lambda_grid(8, 17));
  auto fine = semigroup::weiss_scan(witness.system, witness.xi, witness.x_norm, semigroup::lambda_grid(16, 33));
  const double s1 = semigroup::sup_value(coarse), s2 = semigroup::sup_value(fine);
  if (weiss) *weiss = semigroup::weiss_table(coarse);
  return {make_check("witness_weiss_sup_stable", std::isfinite(s2) ? 0.05 - rel_diff(s2, s1) : -kInf,
                     "sup " + format_double(s1) + " -> " + format_double(s2))};
}

std::vector<Check> witness_decay_checks(const Witness& witness, double eps_min, double tau, CsvTable* decay) {
  auto schedule = eps_schedule(eps_min, tau);
  auto samples = semigroup::decay_profile(witness.system, witness.xi, witness.x_norm,
                                          semigroup::log_grid(schedule.back(), tau, 64));
  // Running sup over [eps, tau] for each eps in the schedule.
  std::vector<double> sups;
  for (double eps : schedule) {
    double s = 0.0;
    for (const auto& d : samples)
      if (d.t >= eps) s = std::max(s, d.value);
    sups.push_back(s);
  }
  const double last = sups.back(), prev = sups[sups.size() - 2];
  std::string details = "running sup:";
  for (double s : sups) details += " " + format_double(s);
  if (decay) *decay = semigroup::decay_table(samples);
  return {make_check("witness_decay_sup_converges", std::isfinite(last) ? 0.05 - rel_diff(last, prev) : -kInf,
                     details)};
}

std::vector<Check> xi_checks(const CounterexampleParams& params, const quadrature::QuadratureSpec& spec,
                             CsvTable* table) {
  std::vector<Check> out;
  const std::string tag = "[q=" + format_double(params.q) + "] ";

  // gamma = 1 - 2 beta = 1/q; the first form cancels, so only absolute precision is meaningful
  const double gdiff = std::max(std::abs(params.gamma - 1.0 / params.q), std::abs(1.0 - 2.0 * params.beta - params.gamma));
  out.push_back(make_check(tag + "gamma_equals_inverse_q", 4.0 * std::numeric_limits<double>::epsilon() - gdiff,
                           "max(|gamma - 1/q|, |1 - 2 beta - gamma|) = " + format_double(gdiff)));

  const std::size_t n_max = 10000;
  auto xi = counterexample::xi_table(n_max, params, spec);
  auto lowest = std::ranges::min_element(xi);
  out.push_back(make_check(tag + "xi_nonnegative", *lowest,
                           "min xi_n over n <= 10000 is " + format_double(*lowest) + " at n = " +
                               std::to_string(lowest - xi.begin())));

  const double g = params.gamma;
  const double a = xi[2000] * std::pow(2000.0, g), b = xi[8000] * std::pow(8000.0, g);
  out.push_back(make_check(tag + "xi_scaled_drift", 0.02 - rel_diff(b, a),
                           "xi_n n^gamma: " + format_double(a) + " (2000), " + format_double(b) + " (8000)"));
  if (table)
    for (std::size_t n = 0; n <= n_max; ++n)
      table->add_row({static_cast<double>(n), xi[n],
                      n == 0 ? kInf : counterexample::xi_asymptotic(static_cast<unsigned>(n), params)});

  auto periods = counterexample::xi_period_decomposition(1001, params, spec);
  auto low_period = std::ranges::min_element(periods);
  out.push_back(make_check(tag + "period_integrals_nonnegative", *low_period,
                           "min I_l over l <= 1000 is " + format_double(*low_period) + " at l = " +
                               std::to_string(low_period - periods.begin())));
  double min_step = kInf;
  for (std::size_t l = 0; l + 1 < periods.size(); ++l) min_step = std::min(min_step, periods[l] - periods[l + 1]);
  out.push_back(make_check(tag + "period_integrals_decreasing", min_step,
                           "min I_l - I_{l+1} = " + format_double(min_step)));

  // xi(2n) = rho0 (2n)^{-gamma} sum_{l<n} I_l with rho0 fitted at n = 10.
  auto partial = [&](unsigned n) {
    double s = 0.0;
    for (unsigned l = 0; l < n; ++l) s += periods[l];
    return s;
  };
  const double rho0 = xi[20] * std::pow(20.0, g) / partial(10);
  double worst = 0.0;
  for (unsigned n : {50u, 200u})
    worst = std::max(worst, rel_diff(rho0 * std::pow(2.0 * n, -g) * partial(n), xi[2 * n]));
  out.push_back(make_check(tag + "period_sum_reconciliation", 1e-8 - worst,
                           "rho0 = " + format_double(rho0) + " (1/pi = " + format_double(1.0 / kPi) +
                               "), max rel at n in {50, 200} = " + format_double(worst)));
  return out;
}

std::vector<Check> orbit_bound_checks(const Witness& witness) {
  const double tail = 1e-9;
  try {
    auto rep = counterexample::orbit_lower_bound_check(witness.system, witness.xi, 0, 20, 8, tail);
    return {make_check("orbit_lower_bound", rep.worst_slack + tail,
                       std::to_string(rep.samples) + " samples, worst slack " + format_double(rep.worst_slack) +
                           " at n = " + std::to_string(rep.worst_n) + ", t = " + format_double(rep.worst_t))};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BoundViolated) throw;
    return {make_check("orbit_lower_bound", -kInf, e.what())};
  }
}

std::vector<Check> divergence_checks(const Witness& witness, const std::vector<double>& eps_list, double tau,
                                     CsvTable* table) {
  auto rows = counterexample::divergence_profile(witness, eps_list, tau);
  if (table) *table = counterexample::divergence_table(rows);
  std::vector<Check> out;

  const auto& last = rows.back();
  const auto& prev = rows[rows.size() - 2];
  out.push_back(make_check("weak_norm_stable", 0.05 - rel_diff(last.orbit_weak, prev.orbit_weak),
                           "L^{2,inf}: " + format_double(prev.orbit_weak) + " -> " + format_double(last.orbit_weak)));

  const double slope = counterexample::divergence_slope(rows, witness.params.q);
  out.push_back(make_check("lq_power_slope", std::min(slope - 0.3, 3.0 - slope),
                           "slope " + format_double(slope) + ", band [0.3, 3]"));

  double min_step = kInf;
  std::string norms = "L^{2,q}:";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    norms += " " + format_double(rows[i].orbit_lq);
    if (i > 0) min_step = std::min(min_step, rows[i].orbit_lq - rows[i - 1].orbit_lq);
  }
  out.push_back(Check{"lq_norm_increasing", min_step > 0.0, min_step, norms});
  return out;
}

std::vector<Check> basis_checks(const CounterexampleParams& params, std::uint64_t seed,
                                const quadrature::QuadratureSpec& spec, CsvTable* table) {
  std::vector<Check> out;
  const std::vector<std::size_t> n_list{1, 25, 50, 100, 200, 400, 800, 1600};
  auto rows = counterexample::bessel_failure_witness(params, n_list, spec);
  if (table) *table = counterexample::bessel_table(rows);

  auto ratio = [](const counterexample::BesselRow& r) { return r.coefficient_sum / r.quadratic_form; };
  const auto& r100 = *std::ranges::find(rows, std::size_t{100}, &counterexample::BesselRow::n);
  const double growth = ratio(rows.back()) / ratio(r100);
  out.push_back(make_check("bessel_ratio_growth", growth - 2.0,
                           "ratio " + format_double(ratio(r100)) + " (N=100) -> " + format_double(ratio(rows.back())) +
                               " (N=1600), factor " + format_double(growth)));

  const double x2 = std::pow(counterexample::state_norm(params), 2);
  double worst = 0.0;
  std::string details = "||x||^2 = " + format_double(x2) + ";";
  for (const auto& r : rows) {
    if (r.n < 100) continue;
    worst = std::max(worst, rel_diff(r.quadratic_form, x2));
    details += " N=" + std::to_string(r.n) + ": " + format_double(r.quadratic_form);
  }
  out.push_back(make_check("quadratic_form_near_state_norm", 0.05 - worst, details));

  const counterexample::GramCache gram(params, 1600, spec);
  const double h400 = counterexample::hilbertian_constant_estimate(gram, 64, 400, seed);
  const double h1600 = counterexample::hilbertian_constant_estimate(gram, 64, 1600, seed);
  const double spread = std::max(h400, h1600) / std::min(h400, h1600);
  out.push_back(make_check("hilbertian_bounded", 2.0 - spread,
                           "estimate " + format_double(h400) + " (N=400), " + format_double(h1600) + " (N=1600)"));

  const double diag = 2.0 * std::pow(kPi, 2.0 * params.beta + 1.0) / (2.0 * params.beta + 1.0);
  worst = rel_diff(gram.by_difference(0), diag);
  for (std::size_t k : {0, 1, 2, 7, 100, 1599})
    worst = std::max(worst, rel_diff(counterexample::gram_entry(k, k, params, spec).real(), diag));
  out.push_back(make_check("gram_diagonal_closed_form", 1e-8 - worst,
                           "2 pi^{2beta+1}/(2beta+1) = " + format_double(diag) + ", max rel " + format_double(worst)));
  return out;
}

std::vector<double> eps_schedule(double eps_min, double tau) {
  std::vector<double> eps;
  for (int k = 1;; ++k) {
    const double v = tau * std::pow(10.0, -2.0 * k);
    if (v < eps_min * (1.0 - 1e-12)) break;
    eps.push_back(v);
  }
  if (eps.empty() || eps.back() > eps_min * (1.0 + 1e-12)) eps.push_back(eps_min);
  if (eps.size() < 2) eps.insert(eps.begin(), std::sqrt(tau * eps_min));
  return eps;
}

Command parse_command(const std::string& name) {
  if (name == "lorentz-norm") return Command::LorentzNorm;
  if (name == "orbit") return Command::Orbit;
  if (name == "weiss-scan") return Command::WeissScan;
  if (name == "counterexample") return Command::Counterexample;
  if (name == "bessel-check") return Command::BesselCheck;
  if (name == "full-report") return Command::FullReport;
  throw Error(ErrorCode::ConfigInvalid, "unknown command '" + name + "'");
}

std::string command_name(Command command) {
  switch (command) {
    case Command::LorentzNorm: return "lorentz-norm";
    case Command::Orbit: return "orbit";
    case Command::WeissScan: return "weiss-scan";
    case Command::Counterexample: return "counterexample";
    case Command::BesselCheck: return "bessel-check";
    case Command::FullReport: return "full-report";
  }
  return "?";
}

void validate(Command command, const Config& config) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); };
  if (command == Command::LorentzNorm) {
    if (!(config.p > 1.0) || !std::isfinite(config.p)) bad("--p must be a finite number > 1");
    if (!(config.q >= 1.0)) bad("--q must be >= 1 (or inf) for lorentz-norm");
  } else if (!(config.q > 2.0) || !std::isfinite(config.q)) {
    bad("--q must lie in (2, inf), got " + format_double(config.q));
  }
  if (!(config.tol >= 1e-14 && config.tol <= 1e-2)) bad("--tol must lie in [1e-14, 1e-2]");
  if (!(config.tau > 0.0 && config.tau <= 1.0)) bad("--tau must lie in (0, 1]");
  if (!(config.eps_min > 0.0)) bad("--eps-min must be positive");
  if (!(config.eps_min < config.tau)) bad("--eps-min must be smaller than --tau");
  if (config.output_dir.empty()) bad("output directory must not be empty");
}

double lorentz_norm_of_file(const std::string& path, double p, double q) {
  return lorentz::lorentz_norm(lorentz::read_csv(path), LorentzIndex(p, q));
}

report::Summary run(Command command, const Config& config) {
  validate(command, config);
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create output directory '" + config.output_dir + "': " + ec.message());

  const double q = config.q;
  report::Summary summary(q, std::isinf(q) ? 0.5 : (q - 1.0) / (2.0 * q), 1.0 / q);
  const auto spec = config.spec();
  const bool full = command == Command::FullReport;

  auto add = [&](const std::vector<Check>& checks) { summary.append(checks); };

  if (command == Command::LorentzNorm && !config.input.empty()) {
    const double value = lorentz_norm_of_file(config.input, config.p, q);
    CsvTable t({"p", "q", "lorentz_norm"});
    t.add_row({config.p, q, value});
    write_table(t, config, "lorentz_norm.csv");
    summary.add(make_check("lorentz_norm_finite", std::isfinite(value) ? 0.0 : -kInf, "value " + format_double(value)));
  } else if (command == Command::LorentzNorm || full) {
    CsvTable t({"a", "sampled_norm", "closed_form", "relative_error"});
    add(lorentz_closed_forms(config.seed, &t));
    add(rearrangement_checks(config.seed));
    write_table(t, config, "lorentz.csv");
  }

  if (command == Command::WeissScan || full) {
    CsvTable lap({"system", "re_lambda", "im_lambda", "series_re", "series_im", "quadrature_re", "quadrature_im",
                  "relative_error"});
    add(laplace_identity(config.seed, spec, &lap));
    write_table(lap, config, "laplace.csv");

    CsvTable weiss({}), decay({});
    add(orthonormal_scans(&weiss, &decay));
    write_table(weiss, config, "weiss_orthonormal.csv");
    write_table(decay, config, "decay_orthonormal.csv");
  }

  if (command != Command::LorentzNorm && command != Command::BesselCheck) {
    const auto params = CounterexampleParams::from_q(q);
    const auto witness = counterexample::make_witness(params, spec);

    if (command == Command::WeissScan || full) {
      CsvTable weiss({});
      add(witness_weiss_checks(witness, &weiss));
      write_table(weiss, config, "weiss_witness.csv");
    }
    if (command == Command::Orbit || full) {
      CsvTable orbit({"t", "orbit_observation", "tail_bound", "envelope"});
      for (double t : semigroup::log_grid(config.eps_min, config.tau, 16)) {
        auto y = semigroup::orbit_observation(witness.system, witness.xi, t, 1e-12);
        orbit.add_row({t, y.value, y.tail_bound, counterexample::envelope(t, params)});
      }
      write_table(orbit, config, "orbit.csv");
      CsvTable decay({});
      add(witness_decay_checks(witness, config.eps_min, config.tau, &decay));
      write_table(decay, config, "decay.csv");
      if (!full) add(orbit_bound_checks(witness));
    }
    if (command == Command::Counterexample || full) {
      CsvTable xi({"n", "xi", "xi_asymptotic"});
      add(xi_checks(params, spec, &xi));
      write_table(xi, config, "xi.csv");
      add(orbit_bound_checks(witness));
      CsvTable div({});
      add(divergence_checks(witness, eps_schedule(config.eps_min, config.tau), config.tau, &div));
      write_table(div, config, "divergence.csv");
    }
  }

  if (command == Command::BesselCheck || full) {
    CsvTable bessel({});
    add(basis_checks(CounterexampleParams::from_q(q), config.seed, spec, &bessel));
    write_table(bessel, config, "bessel.csv");
  }

  summary.write((std::filesystem::path(config.output_dir) / "summary.json").string());
  return summary;
}

}  // namespace weissbench::suites
