#pragma once

// The conditional-basis counterexample on H = L^2(-pi, pi):
//
//   e_k(s) = |s|^beta exp(i nu_k s),   T(t) e_k = exp(-4^k t) e_k,   C e_k = 2^k,
//   x(s)   = |s|^{-beta} = sum_k xi_k e_k,
//
// with beta = 1/(2 q'), so that C T(.) x lies in weak L^2 but in no L^{2,q}
// near t = 0. Expansion coefficients only depend on |nu_k|:
//
//   xi(m) = (1/pi) int_0^pi s^{gamma-1} cos(m s) ds,   gamma = 1 - 2 beta = 1/q.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "weissbench/lorentz.hpp"
#include "weissbench/quadrature.hpp"
#include "weissbench/report.hpp"
#include "weissbench/semigroup.hpp"

namespace weissbench::counterexample {

using quadrature::QuadratureSpec;

struct CounterexampleParams {
  double q;
  double q_conj;  // q / (q - 1)
  double beta;    // 1 / (2 q_conj), in (1/4, 1/2)
  double gamma;   // 1 - 2 beta == 1 / q

  /// Throws Error(Domain) unless q in (2, inf).
  static CounterexampleParams from_q(double q);
  /// Accepts q in (1, inf); only for probing degenerate limits.
  static CounterexampleParams boundary(double q);
};

/// Frequencies 0, -1, +1, -2, +2, ... for k = 0, 1, 2, 3, 4, ...
long frequency(std::size_t k);
std::size_t index_of_frequency(long nu);

/// xi at frequency n by a single graded/oscillatory quadrature.
quadrature::RealResult xi_coefficient(unsigned n, const CounterexampleParams& params, const QuadratureSpec& spec);

/// xi at frequencies 0..n_max, via the cumulative half-period table.
std::vector<double> xi_table(std::size_t n_max, const CounterexampleParams& params, const QuadratureSpec& spec);

/// Leading term (1/pi) n^{-gamma} cos(gamma pi/2) Gamma(gamma).
double xi_asymptotic(unsigned n, const CounterexampleParams& params);

/// I_l = int_0^{2 pi} (2 pi l + x)^{gamma-1} cos x dx for l = 0..n-1.
std::vector<double> xi_period_decomposition(unsigned n, const CounterexampleParams& params,
                                            const QuadratureSpec& spec);

/// rho(n) with rho(n) * sum_{l<n} I_l = xi(2n). The sum of the periods is
/// int_0^{2 pi n} u^{gamma-1} cos u du, so rho(n) = (2n)^{-gamma} / pi.
double period_sum_prefactor(unsigned n, const CounterexampleParams& params);

/// (1 + |log t|)^{-1/q} t^{-1/2}.
double envelope(double t, const CounterexampleParams& params);

/// int_eps^tau (t^{1/2} envelope(t))^q dt/t = log((1 + log(1/eps)) / (1 + log(1/tau)))
/// for 0 < eps < tau <= 1.
double envelope_lq_power(double eps, double tau, const CounterexampleParams& params);

/// ||x||_{L^2(-pi,pi)} = (2 pi^gamma / gamma)^{1/2}.
double state_norm(const CounterexampleParams& params);

/// Left-endpoint samples of f on a log grid over [lo, hi], per_decade cells
/// per factor of ten.
lorentz::StepFunction sample_log(const std::function<double(double)>& f, double lo, double hi,
                                 int per_decade = 64);

/// The observed system together with the expansion of x.
struct Witness {
  CounterexampleParams params;
  std::vector<double> xi_by_frequency;
  semigroup::DiagonalSystem system;
  semigroup::CoefficientVector xi;
  double x_norm;

  double state_coefficient(std::size_t k) const;
  double orbit(double t, double tol = 1e-12) const;
};

Witness make_witness(const CounterexampleParams& params, const QuadratureSpec& spec, std::size_t n_modes = 64);

struct DivergenceRow {
  double eps;
  double envelope_lq_closed;   // (closed form)^{1/q}
  double envelope_lq_sampled;  // lorentz_norm of the sampled envelope
  double orbit_lq;
  double orbit_weak;
};

std::vector<DivergenceRow> divergence_profile(const Witness& witness, const std::vector<double>& eps_list,
                                              double tau, int per_decade = 64, double orbit_tol = 1e-12);
report::CsvTable divergence_table(const std::vector<DivergenceRow>& rows);

/// Least-squares slope of orbit_lq^q against log(1 + log(1/eps)).
double divergence_slope(const std::vector<DivergenceRow>& rows, double q);

struct LowerBoundReport {
  bool pass = true;
  double worst_slack = 0.0;  // min over samples of orbit(t) - xi_n c_n / e
  unsigned worst_n = 0;
  double worst_t = 0.0;
  std::size_t samples = 0;
};

/// Checks |C T(t) x| >= xi_n c_n e^{-1} on t in [4^{-n-1}, 4^{-n}) for every n
/// in [n_lo, n_hi], at samples_per_interval log-uniform points per interval
/// (left end included). Requires mu_n <= 4^n and nonnegative xi over the
/// active modes. Throws Error(BoundViolated) naming the first failing (n, t).
LowerBoundReport orbit_lower_bound_check(const semigroup::DiagonalSystem& sys, const semigroup::CoefficientVector& xi,
                                         unsigned n_lo, unsigned n_hi, unsigned samples_per_interval,
                                         double tail_tol = 1e-9);

/// <e_j, e_k> = 2 int_0^pi s^{2 beta} cos((nu_j - nu_k) s) ds by direct quadrature.
std::complex<double> gram_entry(std::size_t j, std::size_t k, const CounterexampleParams& params,
                                const QuadratureSpec& spec);

/// Gram entries depend only on |nu_j - nu_k|; this stores them for every
/// difference up to max_difference.
class GramCache {
 public:
  GramCache(const CounterexampleParams& params, std::size_t max_difference, const QuadratureSpec& spec);

  double by_difference(std::size_t d) const { return entries_.at(d); }
  double operator()(std::size_t j, std::size_t k) const;
  std::size_t max_difference() const noexcept { return entries_.size() - 1; }

  /// alpha^T G alpha over the first alpha.size() basis vectors.
  double quadratic_form(std::span<const double> alpha) const;

 private:
  std::vector<double> entries_;
};

struct BesselRow {
  std::size_t n;
  double coefficient_sum;  // sum_{k<N} xi_k^2
  double quadratic_form;   // xi^T G xi over k < N
};

std::vector<BesselRow> bessel_failure_witness(const CounterexampleParams& params, const std::vector<std::size_t>& n_list,
                                              const QuadratureSpec& spec);
report::CsvTable bessel_table(const std::vector<BesselRow>& rows);

/// 64-bit linear congruential generator, state' = a state + c (mod 2^64) with
/// a = 6364136223846793005, c = 1442695040888963407; uniform draws take the
/// top 53 bits of the new state.
class Lcg64 {
 public:
  explicit Lcg64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform01();                            // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::uint64_t state_;
};

/// max over trials of (a^T G a)^{1/2} / |a|_2 with a uniform on [-1, 1]^N.
double hilbertian_constant_estimate(const GramCache& gram, unsigned trials, std::size_t n, std::uint64_t seed);
double hilbertian_constant_estimate(const CounterexampleParams& params, unsigned trials, std::size_t n,
                                    std::uint64_t seed, const QuadratureSpec& spec);

}  // namespace weissbench::counterexample
