#include "weissbench/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "weissbench/error.hpp"

namespace weissbench::semigroup {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSlack = 1e-12;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

void require_positive_increasing(const std::vector<double>& mu) {
  if (mu.empty()) invalid("diagonal system needs at least one mode");
  for (std::size_t k = 0; k < mu.size(); ++k) {
    if (!std::isfinite(mu[k]) || !(mu[k] > 0.0)) invalid("eigenvalues must be positive and finite");
    if (k > 0 && !(mu[k] > mu[k - 1])) invalid("eigenvalues must be strictly increasing");
  }
}

// Number of leading modes that may carry a nonzero contribution, or npos when
// the sum is genuinely infinite and has to be truncated.
constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

std::size_t exact_extent(const DiagonalSystem& sys, const CoefficientVector& xi) {
  if (sys.is_finite()) return xi.is_finite() ? std::min(sys.n_active(), xi.size()) : sys.n_active();
  if (xi.is_finite() && xi.size() <= sys.n_active()) return xi.size();
  return kInfinite;
}

// Geometric bound on sum_{k > n} scale * b(k), valid when b has non-increasing
// term ratios beyond n + 1.
template <class Bound>
double geometric_tail(const Bound& b, std::size_t n, double scale) {
  double b1 = b(n + 1);
  if (b1 == 0.0 || scale == 0.0) return 0.0;
  double ratio = b(n + 2) / b1;
  if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
  return scale * b1 / (1.0 - ratio);
}

// Sums term(k) for k = 0, 1, ... until the tail bound drops below threshold(acc).
template <class Acc, class Term, class Bound, class Threshold>
void truncated_sum(const DiagonalSystem& sys, const CoefficientVector& xi, const Term& term,
                   const Bound& bound, const Threshold& threshold, Acc& acc, double& tail,
                   std::size_t& terms, const char* what) {
  std::size_t extent = exact_extent(sys, xi);
  if (extent != kInfinite) {
    for (std::size_t k = 0; k < extent; ++k) acc += term(k);
    tail = 0.0;
    terms = extent;
    return;
  }
  const double scale = xi.magnitude_bound();
  for (std::size_t n = 0; n + 2 < sys.n_active(); ++n) {
    acc += term(n);
    double t = geometric_tail(bound, n, scale);
    if (t == 0.0 || t < threshold(acc)) {
      tail = t;
      terms = n + 1;
      return;
    }
  }
  throw Error(ErrorCode::TruncationOverflow,
              std::string(what) + ": tail bound not reached within " + std::to_string(sys.n_active()) +
                  " active modes");
}

double end_ratio(const DiagonalSystem& sys, double power) {
  std::size_t n = sys.n_active();
  if (sys.is_finite() || n < 2) return 0.0;
  double a = std::pow(std::abs(sys.c(n - 2)) / sys.mu(n - 2), power);
  double b = std::pow(std::abs(sys.c(n - 1)) / sys.mu(n - 1), power);
  if (a == 0.0) return 0.0;
  return b / a;
}

}  // namespace

DiagonalSystem::DiagonalSystem(std::vector<double> mu, std::vector<double> c, bool finite)
    : mu_(std::move(mu)), c_(std::move(c)), finite_(finite) {}

DiagonalSystem DiagonalSystem::finite(std::vector<double> mu, std::vector<double> c) {
  require_positive_increasing(mu);
  if (c.size() != mu.size()) invalid("need one observation coefficient per eigenvalue");
  for (double v : c)
    if (!std::isfinite(v)) invalid("observation coefficients must be finite");
  return DiagonalSystem(std::move(mu), std::move(c), true);
}

DiagonalSystem DiagonalSystem::from_rules(const Rule& mu_rule, const Rule& c_rule, std::size_t n_active) {
  if (n_active < 3) invalid("rule-based systems need at least three active modes");
  std::vector<double> mu(n_active), c(n_active);
  for (std::size_t k = 0; k < n_active; ++k) {
    mu[k] = mu_rule(k);
    c[k] = c_rule(k);
    if (!std::isfinite(c[k])) invalid("observation coefficients must be finite");
  }
  require_positive_increasing(mu);

  bool all_zero = std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; });
  if (!all_zero) {
    for (std::size_t k = 0; k < n_active; ++k)
      if (c[k] == 0.0) invalid("rule-based observation coefficients must be all zero or all nonzero");
    for (std::size_t k = 0; k + 2 < n_active; ++k) {
      double r0 = std::abs(c[k + 1] / c[k]), r1 = std::abs(c[k + 2] / c[k + 1]);
      if (r1 > r0 * (1.0 + kSlack)) invalid("|c_{k+1}/c_k| must be non-increasing");
    }
  }
  for (std::size_t k = 0; k + 2 < n_active; ++k) {
    double g0 = mu[k + 1] - mu[k], g1 = mu[k + 2] - mu[k + 1];
    if (g1 < g0 * (1.0 - kSlack)) invalid("eigenvalue gaps must be non-decreasing");
    double q0 = mu[k + 1] / mu[k], q1 = mu[k + 2] / mu[k + 1];
    if (q1 < q0 * (1.0 - kSlack)) invalid("eigenvalue ratios must be non-decreasing");
  }
  return DiagonalSystem(std::move(mu), std::move(c), false);
}

DiagonalSystem DiagonalSystem::dyadic(std::size_t n_active) {
  return from_rules([](std::size_t k) { return std::ldexp(1.0, 2 * static_cast<int>(k)); },
                    [](std::size_t k) { return std::ldexp(1.0, static_cast<int>(k)); }, n_active);
}

DiagonalSystem DiagonalSystem::square_root_observation(std::size_t n_active) {
  return from_rules([](std::size_t k) { return std::ldexp(1.0, static_cast<int>(k)); },
                    [](std::size_t k) { return std::sqrt(std::ldexp(1.0, static_cast<int>(k))); }, n_active);
}

bool DiagonalSystem::resolvent_series_converges() const { return end_ratio(*this, 1.0) < 1.0; }

CoefficientVector CoefficientVector::finite(std::vector<double> xi) {
  CoefficientVector v;
  for (double x : xi) {
    if (!std::isfinite(x)) invalid("state coefficients must be finite");
    v.bound_ = std::max(v.bound_, std::abs(x));
  }
  v.values_ = std::move(xi);
  v.finite_ = true;
  return v;
}

CoefficientVector CoefficientVector::from_rule(std::function<double(std::size_t)> xi, double magnitude_bound) {
  if (!(magnitude_bound >= 0.0) || !std::isfinite(magnitude_bound))
    invalid("coefficient magnitude bound must be finite and nonnegative");
  CoefficientVector v;
  v.rule_ = std::move(xi);
  v.bound_ = magnitude_bound;
  v.finite_ = false;
  return v;
}

double CoefficientVector::operator[](std::size_t k) const {
  if (finite_) return k < values_.size() ? values_[k] : 0.0;
  return rule_(k);
}

Truncated orbit_observation(const DiagonalSystem& sys, const CoefficientVector& xi, double t, double tol) {
  if (!(t > 0.0)) throw Error(ErrorCode::Domain, "orbit needs t > 0");
  if (!(tol > 0.0)) invalid("orbit tolerance must be positive");
  Truncated out;
  auto term = [&](std::size_t k) {
    double x = xi[k];
    return x == 0.0 ? 0.0 : x * sys.c(k) * std::exp(-sys.mu(k) * t);
  };
  auto bound = [&](std::size_t k) { return std::abs(sys.c(k)) * std::exp(-sys.mu(k) * t); };
  truncated_sum(sys, xi, term, bound, [tol](double) { return tol; }, out.value, out.tail_bound, out.terms,
                "orbit_observation");
  return out;
}

TruncatedComplex resolvent_observation(const DiagonalSystem& sys, const CoefficientVector& xi, Complex lambda,
                                       double tol) {
  if (!(lambda.real() > 0.0)) throw Error(ErrorCode::Domain, "resolvent needs Re(lambda) > 0");
  if (!(tol > 0.0)) invalid("resolvent tolerance must be positive");
  if (!sys.resolvent_series_converges())
    throw Error(ErrorCode::DivergentSum, "sum |c_k|/mu_k does not converge over the active modes");
  TruncatedComplex out;
  auto term = [&](std::size_t k) {
    double x = xi[k];
    return x == 0.0 ? Complex{} : x * sys.c(k) / (lambda + sys.mu(k));
  };
  auto bound = [&](std::size_t k) { return std::abs(sys.c(k)) / sys.mu(k); };
  truncated_sum(sys, xi, term, bound, [tol](const Complex&) { return tol; }, out.value, out.tail_bound,
                out.terms, "resolvent_observation");
  return out;
}

double weiss_quotient(const DiagonalSystem& sys, const CoefficientVector& xi, double x_norm, Complex lambda,
                      double tol) {
  if (!(x_norm > 0.0)) invalid("state norm must be positive");
  auto r = resolvent_observation(sys, xi, lambda, tol);
  return std::sqrt(lambda.real()) * std::abs(r.value) / x_norm;
}

namespace {

// Sum over all modes of w(k) >= 0 with tail dominated by sum of bound(k),
// stopping once the tail is below tol times the partial sum.
template <class Weight, class Bound>
double orthonormal_square_sum(const DiagonalSystem& sys, const Weight& w, const Bound& bound, double tol,
                              const char* what) {
  static const CoefficientVector ones = CoefficientVector::from_rule([](std::size_t) { return 1.0; }, 1.0);
  double acc = 0.0, tail = 0.0;
  std::size_t terms = 0;
  truncated_sum(sys, ones, w, bound, [tol](double partial) { return tol * partial; }, acc, tail, terms, what);
  return acc;
}

}  // namespace

double weiss_norm_orthonormal(const DiagonalSystem& sys, Complex lambda, double tol) {
  if (!(lambda.real() > 0.0)) throw Error(ErrorCode::Domain, "Weiss norm needs Re(lambda) > 0");
  if (!(end_ratio(sys, 2.0) < 1.0))
    throw Error(ErrorCode::DivergentSum, "sum |c_k|^2/mu_k^2 does not converge over the active modes");
  auto w = [&](std::size_t k) { return std::norm(sys.c(k) / (lambda + sys.mu(k))); };
  auto bound = [&](std::size_t k) { return std::pow(sys.c(k) / sys.mu(k), 2); };
  double sum = orthonormal_square_sum(sys, w, bound, tol, "weiss_norm_orthonormal");
  return std::sqrt(lambda.real()) * std::sqrt(sum);
}

double orbit_norm_orthonormal(const DiagonalSystem& sys, double t, double tol) {
  if (!(t > 0.0)) throw Error(ErrorCode::Domain, "orbit norm needs t > 0");
  auto w = [&](std::size_t k) { return std::pow(sys.c(k), 2) * std::exp(-2.0 * sys.mu(k) * t); };
  double sum = orthonormal_square_sum(sys, w, w, tol, "orbit_norm_orthonormal");
  return std::sqrt(sum);
}

std::vector<DecaySample> decay_profile(const DiagonalSystem& sys, const CoefficientVector& xi, double x_norm,
                                       const std::vector<double>& t_grid, double tol) {
  if (!(x_norm > 0.0)) invalid("state norm must be positive");
  std::vector<DecaySample> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    auto y = orbit_observation(sys, xi, t, tol);
    out.push_back({t, std::sqrt(t) * std::abs(y.value) / x_norm});
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0 && hi > lo) || per_decade < 1) invalid("log grid needs 0 < lo < hi and per_decade >= 1");
  double decades = std::log10(hi / lo);
  auto cells = static_cast<std::size_t>(std::ceil(decades * per_decade - 1e-9));
  std::vector<double> pts(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i)
    pts[i] = lo * std::pow(10.0, decades * static_cast<double>(i) / static_cast<double>(cells));
  pts.front() = lo;
  pts.back() = hi;
  return pts;
}

std::vector<Complex> lambda_grid(int moduli_per_decade, int arguments, double min_modulus, double max_modulus) {
  if (arguments < 1) invalid("lambda grid needs at least one argument");
  auto moduli = log_grid(min_modulus, max_modulus, moduli_per_decade);
  const double lo = -kPi / 2 + 0.01, hi = kPi / 2 - 0.01;
  std::vector<Complex> grid;
  grid.reserve(moduli.size() * static_cast<std::size_t>(arguments));
  for (double r : moduli) {
    for (int j = 0; j < arguments; ++j) {
      double theta = arguments == 1 ? 0.0 : lo + (hi - lo) * j / (arguments - 1);
      grid.push_back(std::polar(r, theta));
    }
  }
  return grid;
}

std::vector<WeissSample> weiss_scan(const DiagonalSystem& sys, const CoefficientVector& xi, double x_norm,
                                    const std::vector<Complex>& grid, double tol) {
  std::vector<WeissSample> out;
  out.reserve(grid.size());
  for (auto lambda : grid) out.push_back({lambda, weiss_quotient(sys, xi, x_norm, lambda, tol)});
  return out;
}

std::vector<WeissSample> weiss_scan_orthonormal(const DiagonalSystem& sys, const std::vector<Complex>& grid,
                                                double tol) {
  std::vector<WeissSample> out;
  out.reserve(grid.size());
  for (auto lambda : grid) out.push_back({lambda, weiss_norm_orthonormal(sys, lambda, tol)});
  return out;
}

double sup_value(const std::vector<WeissSample>& samples) {
  double s = 0.0;
  for (const auto& w : samples) s = std::max(s, w.value);
  return s;
}

double sup_value(const std::vector<DecaySample>& samples) {
  double s = 0.0;
  for (const auto& d : samples) s = std::max(s, d.value);
  return s;
}

report::CsvTable weiss_table(const std::vector<WeissSample>& samples) {
  report::CsvTable table({"re_lambda", "im_lambda", "weiss_quotient"});
  for (const auto& s : samples) table.add_row({s.lambda.real(), s.lambda.imag(), s.value});
  return table;
}

report::CsvTable decay_table(const std::vector<DecaySample>& samples) {
  report::CsvTable table({"t", "decay_sample"});
  for (const auto& s : samples) table.add_row({s.t, s.value});
  return table;
}

double laplace_cutoff(const DiagonalSystem& sys, const CoefficientVector& xi, Complex lambda, double tol) {
  if (!(lambda.real() > 0.0)) throw Error(ErrorCode::Domain, "Laplace cutoff needs Re(lambda) > 0");
  if (!(tol > 0.0)) invalid("Laplace cutoff tolerance must be positive");
  // For t >= 1: |C T(t) x| <= M e^{-mu_0 (t - 1)} with M >= sum |xi_k c_k| e^{-mu_k}.
  auto bound = [&](std::size_t k) { return std::abs(sys.c(k)) * std::exp(-sys.mu(k)); };
  double m = 0.0;
  std::size_t extent = exact_extent(sys, xi);
  if (extent != kInfinite) {
    for (std::size_t k = 0; k < extent; ++k) m += std::abs(xi[k]) * bound(k);
  } else {
    const double b = xi.magnitude_bound();
    bool done = false;
    for (std::size_t n = 0; n + 2 < sys.n_active() && !done; ++n) {
      m += b * bound(n);
      double tail = geometric_tail(bound, n, b);
      if (tail <= m) {
        m += tail;
        done = true;
      }
    }
    if (!done) throw Error(ErrorCode::TruncationOverflow, "laplace_cutoff: orbit bound at t = 1 not reached");
  }
  if (m == 0.0) return 1.0;
  const double rate = lambda.real() + sys.mu(0);
  double cutoff = (std::log(m) + sys.mu(0) - std::log(rate * tol)) / rate;
  return std::max(1.0, cutoff);
}

quadrature::ComplexResult laplace_of_orbit(const DiagonalSystem& sys, const CoefficientVector& xi, Complex lambda,
                                           double cutoff, const quadrature::QuadratureSpec& spec,
                                           double orbit_tol) {
  auto orbit = [&](double t) { return orbit_observation(sys, xi, t, orbit_tol).value; };
  return quadrature::laplace_quadrature(orbit, lambda, cutoff, spec);
}

}  // namespace weissbench::semigroup
