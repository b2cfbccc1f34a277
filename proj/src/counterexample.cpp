#include "weissbench/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "weissbench/error.hpp"

namespace weissbench::counterexample {

namespace {

constexpr double kPi = std::numbers::pi;

CounterexampleParams make_params(double q) {
  CounterexampleParams p{};
  p.q = q;
  p.q_conj = q / (q - 1.0);
  p.beta = (q - 1.0) / (2.0 * q);
  // 1 - 2 beta, without the cancellation for large q
  p.gamma = 1.0 / q;
  return p;
}

}  // namespace

CounterexampleParams CounterexampleParams::from_q(double q) {
  if (!(q > 2.0) || !std::isfinite(q)) throw Error(ErrorCode::Domain, "counterexample needs q in (2, inf)");
  return make_params(q);
}

CounterexampleParams CounterexampleParams::boundary(double q) {
  if (!(q > 1.0) || !std::isfinite(q)) throw Error(ErrorCode::Domain, "boundary parameters need q in (1, inf)");
  return make_params(q);
}

long frequency(std::size_t k) {
  auto half = static_cast<long>((k + 1) / 2);
  return k % 2 == 1 ? -half : half;
}

std::size_t index_of_frequency(long nu) {
  if (nu == 0) return 0;
  return nu < 0 ? static_cast<std::size_t>(-2 * nu - 1) : static_cast<std::size_t>(2 * nu);
}

quadrature::RealResult xi_coefficient(unsigned n, const CounterexampleParams& params, const QuadratureSpec& spec) {
  auto r = quadrature::singular_oscillatory_integral(params.gamma, n, spec);
  r.value /= kPi;
  r.error_estimate /= kPi;
  return r;
}

std::vector<double> xi_table(std::size_t n_max, const CounterexampleParams& params, const QuadratureSpec& spec) {
  auto moments = quadrature::cosine_moment_table(params.gamma, n_max, spec);
  for (double& v : moments.values) v /= kPi;
  return moments.values;
}

double xi_asymptotic(unsigned n, const CounterexampleParams& params) {
  if (n == 0) throw Error(ErrorCode::Domain, "xi_asymptotic needs n >= 1");
  const double g = params.gamma;
  return std::pow(static_cast<double>(n), -g) * std::cos(g * kPi / 2.0) * quadrature::gamma_function(g) / kPi;
}

std::vector<double> xi_period_decomposition(unsigned n, const CounterexampleParams& params,
                                            const QuadratureSpec& spec) {
  if (n == 0) throw Error(ErrorCode::Domain, "period decomposition needs n >= 1");
  const double g = params.gamma;
  std::vector<double> periods(n);
  // l = 0 has the x^{gamma-1} singularity; x = 2s maps it onto the power-cosine kernel.
  periods[0] = std::pow(2.0, g) * quadrature::singular_oscillatory_integral(g, 2, spec).value;
  for (unsigned l = 1; l < n; ++l) {
    const double shift = 2.0 * kPi * l;
    auto f = [g, shift](double x) { return std::pow(shift + x, g - 1.0) * std::cos(x); };
    std::array<double, 5> mesh{0.0, 0.5 * kPi, kPi, 1.5 * kPi, 2.0 * kPi};
    periods[l] = quadrature::integrate_mesh(f, mesh, spec).value;
  }
  return periods;
}

double period_sum_prefactor(unsigned n, const CounterexampleParams& params) {
  return std::pow(2.0 * n, -params.gamma) / kPi;
}

double envelope(double t, const CounterexampleParams& params) {
  if (!(t > 0.0)) throw Error(ErrorCode::Domain, "envelope needs t > 0");
  return std::pow(1.0 + std::abs(std::log(t)), -1.0 / params.q) / std::sqrt(t);
}

double envelope_lq_power(double eps, double tau, const CounterexampleParams&) {
  if (!(eps > 0.0 && eps < tau && tau <= 1.0))
    throw Error(ErrorCode::Domain, "envelope norm needs 0 < eps < tau <= 1");
  return std::log((1.0 + std::log(1.0 / eps)) / (1.0 + std::log(1.0 / tau)));
}

double state_norm(const CounterexampleParams& params) {
  return std::sqrt(2.0 * std::pow(kPi, params.gamma) / params.gamma);
}

lorentz::StepFunction sample_log(const std::function<double(double)>& f, double lo, double hi, int per_decade) {
  return lorentz::StepFunction::sample(f, semigroup::log_grid(lo, hi, per_decade),
                                       lorentz::StepFunction::SamplePoint::Left);
}

double Witness::state_coefficient(std::size_t k) const {
  auto m = static_cast<std::size_t>(std::abs(frequency(k)));
  if (m >= xi_by_frequency.size())
    throw Error(ErrorCode::TruncationOverflow, "state coefficient beyond the precomputed xi table");
  return xi_by_frequency[m];
}

double Witness::orbit(double t, double tol) const {
  return semigroup::orbit_observation(system, xi, t, tol).value;
}

Witness make_witness(const CounterexampleParams& params, const QuadratureSpec& spec, std::size_t n_modes) {
  auto table = xi_table((n_modes + 1) / 2, params, spec);
  auto system = semigroup::DiagonalSystem::dyadic(n_modes);
  // |xi(m)| <= (1/pi) int_0^pi s^{gamma-1} ds = xi(0) for every m.
  const double bound = std::pow(kPi, params.gamma - 1.0) / params.gamma;
  auto coeffs = semigroup::CoefficientVector::from_rule(
      [table](std::size_t k) { return table.at(static_cast<std::size_t>(std::abs(frequency(k)))); }, bound);
  return Witness{params, std::move(table), std::move(system), std::move(coeffs), state_norm(params)};
}

std::vector<DivergenceRow> divergence_profile(const Witness& witness, const std::vector<double>& eps_list,
                                              double tau, int per_decade, double orbit_tol) {
  const auto& params = witness.params;
  if (!(tau > 0.0 && tau <= 1.0)) throw Error(ErrorCode::Domain, "divergence profile needs tau in (0, 1]");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0 && eps_list[i] < tau)) throw Error(ErrorCode::Domain, "eps must lie in (0, tau)");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw Error(ErrorCode::InvalidArgument, "eps list must decrease");
  }
  const lorentz::LorentzIndex strong(2.0, params.q);
  const auto weak = lorentz::LorentzIndex::weak(2.0);

  std::vector<DivergenceRow> rows;
  rows.reserve(eps_list.size());
  for (double eps : eps_list) {
    auto orbit = sample_log([&](double t) { return witness.orbit(t, orbit_tol); }, eps, tau, per_decade);
    auto env = sample_log([&](double t) { return envelope(t, params); }, eps, tau, per_decade);
    rows.push_back({eps, std::pow(envelope_lq_power(eps, tau, params), 1.0 / params.q),
                    lorentz::lorentz_norm(env, strong), lorentz::lorentz_norm(orbit, strong),
                    lorentz::lorentz_norm(orbit, weak)});
  }
  return rows;
}

report::CsvTable divergence_table(const std::vector<DivergenceRow>& rows) {
  report::CsvTable table({"eps", "envelope_lq_closed", "envelope_lq_sampled", "orbit_lq", "orbit_weak"});
  for (const auto& r : rows)
    table.add_row({r.eps, r.envelope_lq_closed, r.envelope_lq_sampled, r.orbit_lq, r.orbit_weak});
  return table;
}

double divergence_slope(const std::vector<DivergenceRow>& rows, double q) {
  if (rows.size() < 2) throw Error(ErrorCode::InvalidArgument, "slope fit needs at least two rows");
  double mx = 0.0, my = 0.0;
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    xs.push_back(std::log(1.0 + std::log(1.0 / r.eps)));
    ys.push_back(std::pow(r.orbit_lq, q));
    mx += xs.back();
    my += ys.back();
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(ys.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

LowerBoundReport orbit_lower_bound_check(const semigroup::DiagonalSystem& sys, const semigroup::CoefficientVector& xi,
                                         unsigned n_lo, unsigned n_hi, unsigned samples_per_interval,
                                         double tail_tol) {
  if (n_lo > n_hi || samples_per_interval == 0)
    throw Error(ErrorCode::InvalidArgument, "lower bound check needs n_lo <= n_hi and samples > 0");
  std::size_t extent = xi.is_finite() ? std::min(xi.size(), sys.n_active()) : sys.n_active();
  for (std::size_t k = 0; k < extent; ++k)
    if (xi[k] < 0.0) throw Error(ErrorCode::InvalidArgument, "lower bound needs nonnegative coefficients");
  for (unsigned n = n_lo; n <= n_hi; ++n)
    if (n >= sys.n_active() || sys.mu(n) > std::ldexp(1.0, 2 * static_cast<int>(n)))
      throw Error(ErrorCode::InvalidArgument, "lower bound needs mu_n <= 4^n on active modes");

  LowerBoundReport rep;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  for (unsigned n = n_lo; n <= n_hi; ++n) {
    const double left = std::ldexp(1.0, -2 * static_cast<int>(n) - 2);
    const double bound = xi[n] * sys.c(n) * std::exp(-1.0);
    for (unsigned j = 0; j < samples_per_interval; ++j) {
      const double t = left * std::pow(4.0, static_cast<double>(j) / samples_per_interval);
      const double y = semigroup::orbit_observation(sys, xi, t, tail_tol).value;
      const double slack = y - bound;
      ++rep.samples;
      if (slack < rep.worst_slack) {
        rep.worst_slack = slack;
        rep.worst_n = n;
        rep.worst_t = t;
      }
      if (slack < -tail_tol) {
        rep.pass = false;
        throw Error(ErrorCode::BoundViolated, "orbit below xi_n c_n/e at n = " + std::to_string(n) +
                                                  ", t = " + report::format_double(t) +
                                                  " (slack " + report::format_double(slack) + ")");
      }
    }
  }
  return rep;
}

std::complex<double> gram_entry(std::size_t j, std::size_t k, const CounterexampleParams& params,
                                const QuadratureSpec& spec) {
  auto d = static_cast<unsigned>(std::abs(frequency(j) - frequency(k)));
  return {2.0 * quadrature::singular_oscillatory_integral(2.0 * params.beta + 1.0, d, spec).value, 0.0};
}

GramCache::GramCache(const CounterexampleParams& params, std::size_t max_difference, const QuadratureSpec& spec) {
  auto moments = quadrature::cosine_moment_table(2.0 * params.beta + 1.0, max_difference, spec);
  entries_ = std::move(moments.values);
  for (double& v : entries_) v *= 2.0;
}

double GramCache::operator()(std::size_t j, std::size_t k) const {
  return by_difference(static_cast<std::size_t>(std::abs(frequency(j) - frequency(k))));
}

double GramCache::quadratic_form(std::span<const double> alpha) const {
  const std::size_t n = alpha.size();
  if (n > 0 && static_cast<std::size_t>(2 * std::abs(frequency(n - 1))) > max_difference())
    throw Error(ErrorCode::TruncationOverflow, "Gram cache too small for this many basis vectors");
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double row = 0.0;
    for (std::size_t k = 0; k < j; ++k) row += (*this)(j, k) * alpha[k];
    acc += alpha[j] * (2.0 * row + entries_[0] * alpha[j]);
  }
  return acc;
}

std::vector<BesselRow> bessel_failure_witness(const CounterexampleParams& params, const std::vector<std::size_t>& n_list,
                                              const QuadratureSpec& spec) {
  if (n_list.empty()) return {};
  for (std::size_t i = 0; i < n_list.size(); ++i)
    if (n_list[i] == 0 || (i > 0 && n_list[i] <= n_list[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "N list must be positive and increasing");

  const std::size_t n_max = n_list.back();
  const auto top_freq = static_cast<std::size_t>(std::abs(frequency(n_max - 1)));
  const auto table = xi_table(top_freq, params, spec);
  const GramCache gram(params, 2 * top_freq, spec);

  std::vector<double> xi(n_max);
  for (std::size_t k = 0; k < n_max; ++k) xi[k] = table[static_cast<std::size_t>(std::abs(frequency(k)))];

  // Grow both sums one basis vector at a time.
  std::vector<BesselRow> rows;
  double coef = 0.0, form = 0.0;
  std::size_t next = 0;
  for (std::size_t j = 0; j < n_max; ++j) {
    double row = 0.0;
    for (std::size_t k = 0; k < j; ++k) row += gram(j, k) * xi[k];
    form += xi[j] * (2.0 * row + gram.by_difference(0) * xi[j]);
    coef += xi[j] * xi[j];
    if (j + 1 == n_list[next]) {
      rows.push_back({j + 1, coef, form});
      ++next;
    }
  }
  return rows;
}

report::CsvTable bessel_table(const std::vector<BesselRow>& rows) {
  report::CsvTable table({"n", "coefficient_sum", "quadratic_form"});
  for (const auto& r : rows) table.add_row({static_cast<double>(r.n), r.coefficient_sum, r.quadratic_form});
  return table;
}

std::uint64_t Lcg64::next() {
  state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
  return state_;
}

double Lcg64::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double hilbertian_constant_estimate(const GramCache& gram, unsigned trials, std::size_t n, std::uint64_t seed) {
  if (trials == 0 || n == 0) throw Error(ErrorCode::InvalidArgument, "need at least one trial and one vector");
  Lcg64 rng(seed);
  std::vector<double> alpha(n);
  double best = 0.0;
  for (unsigned t = 0; t < trials; ++t) {
    double norm2 = 0.0;
    for (double& a : alpha) {
      a = rng.uniform(-1.0, 1.0);
      norm2 += a * a;
    }
    if (norm2 == 0.0) continue;
    best = std::max(best, std::sqrt(gram.quadratic_form(alpha) / norm2));
  }
  return best;
}

double hilbertian_constant_estimate(const CounterexampleParams& params, unsigned trials, std::size_t n,
                                    std::uint64_t seed, const QuadratureSpec& spec) {
  const auto top = static_cast<std::size_t>(std::abs(frequency(n - 1)));
  return hilbertian_constant_estimate(GramCache(params, 2 * top, spec), trials, n, seed);
}

}  // namespace weissbench::counterexample
