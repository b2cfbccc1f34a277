#pragma once

// Diagonal observation systems  T(t) e_k = exp(-mu_k t) e_k,  C e_k = c_k,
// evaluated on states x = sum_k xi_k e_k:
//   C T(t) x           = sum_k xi_k c_k exp(-mu_k t)
//   C (lambda + A)^-1 x = sum_k xi_k c_k / (lambda + mu_k)
// Every infinite sum is truncated with a rigorous tail bound, which is
// returned next to the value.

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "weissbench/quadrature.hpp"
#include "weissbench/report.hpp"

namespace weissbench::semigroup {

using Complex = std::complex<double>;

/// Eigenvalues mu_k (positive, strictly increasing) and observation
/// coefficients c_k of a diagonal system.
///
/// A finite system has exactly n_active modes. A rule-based system is
/// infinite and n_active only caps how far a sum may be pushed; for those the
/// tail bounds assume, and the constructor checks over the active modes, that
/// |c_{k+1}/c_k| is non-increasing, mu_{k+1} - mu_k is non-decreasing and
/// mu_{k+1}/mu_k is non-decreasing (so every tail is dominated by a geometric
/// series with the ratio of its first two terms). c identically zero is
/// also accepted.
class DiagonalSystem {
 public:
  using Rule = std::function<double(std::size_t)>;

  static DiagonalSystem finite(std::vector<double> mu, std::vector<double> c);
  static DiagonalSystem from_rules(const Rule& mu, const Rule& c, std::size_t n_active);

  /// mu_k = 4^k, c_k = 2^k.
  static DiagonalSystem dyadic(std::size_t n_active = 64);
  /// mu_k = 2^k, c_k = mu_k^{1/2}, read as living on an orthonormal basis.
  static DiagonalSystem square_root_observation(std::size_t n_active = 200);

  double mu(std::size_t k) const { return mu_.at(k); }
  double c(std::size_t k) const { return c_.at(k); }
  std::size_t n_active() const noexcept { return mu_.size(); }
  bool is_finite() const noexcept { return finite_; }

  /// Active-mode check of sum |c_k|/mu_k: true for finite systems, otherwise
  /// the term ratio at the end of the active range must be < 1.
  bool resolvent_series_converges() const;

 private:
  DiagonalSystem(std::vector<double> mu, std::vector<double> c, bool finite);

  std::vector<double> mu_;
  std::vector<double> c_;
  bool finite_;
};

/// State coefficients xi_k. Square-summability is not required.
class CoefficientVector {
 public:
  /// xi_k for k < size, zero beyond.
  static CoefficientVector finite(std::vector<double> xi);
  /// Infinite sequence with sup_k |xi_k| <= magnitude_bound.
  static CoefficientVector from_rule(std::function<double(std::size_t)> xi, double magnitude_bound);

  double operator[](std::size_t k) const;
  bool is_finite() const noexcept { return finite_; }
  std::size_t size() const noexcept { return values_.size(); }
  double magnitude_bound() const noexcept { return bound_; }

 private:
  CoefficientVector() = default;

  std::vector<double> values_;
  std::function<double(std::size_t)> rule_;
  double bound_ = 0.0;
  bool finite_ = true;
};

struct Truncated {
  double value = 0.0;
  double tail_bound = 0.0;
  std::size_t terms = 0;
};

struct TruncatedComplex {
  Complex value;
  double tail_bound = 0.0;
  std::size_t terms = 0;
};

/// C T(t) x, summed over the fewest leading modes whose rigorous tail bound
/// sum_{k>N} |xi_k c_k| e^{-mu_k t} is below tol. Throws
/// Error(TruncationOverflow) if that needs more than n_active modes.
Truncated orbit_observation(const DiagonalSystem& sys, const CoefficientVector& xi, double t, double tol);

/// C (lambda + A)^{-1} x with tail bound sum_{k>N} |xi_k c_k| / mu_k < tol.
TruncatedComplex resolvent_observation(const DiagonalSystem& sys, const CoefficientVector& xi,
                                       Complex lambda, double tol);

/// Re(lambda)^{1/2} |C (lambda + A)^{-1} x| / ||x||, with ||x|| supplied by
/// the caller.
double weiss_quotient(const DiagonalSystem& sys, const CoefficientVector& xi, double x_norm,
                      Complex lambda, double tol = 1e-12);

/// Re(lambda)^{1/2} ||C (lambda + A)^{-1}|| for a system on an orthonormal
/// basis with scalar output: the l2 norm of (c_k / (lambda + mu_k)).
/// Summation stops once the tail of the squared sum is below tol times the
/// partial sum. Throws Error(DivergentSum) when sum |c_k|^2 / mu_k^2 does not
/// converge over the active modes.
double weiss_norm_orthonormal(const DiagonalSystem& sys, Complex lambda, double tol = 1e-12);

/// ||C T(t)|| on an orthonormal basis: (sum_k c_k^2 e^{-2 mu_k t})^{1/2}.
double orbit_norm_orthonormal(const DiagonalSystem& sys, double t, double tol = 1e-12);

struct DecaySample {
  double t;
  double value;  // t^{1/2} |C T(t) x| / ||x||
};

std::vector<DecaySample> decay_profile(const DiagonalSystem& sys, const CoefficientVector& xi,
                                       double x_norm, const std::vector<double>& t_grid,
                                       double tol = 1e-12);

/// Log-spaced points, `per_decade` per factor of ten, covering [lo, hi].
std::vector<double> log_grid(double lo, double hi, int per_decade);

/// Moduli log-spaced over [1e-4, 1e8] and arguments uniform over
/// [-pi/2 + 0.01, pi/2 - 0.01], so Re(lambda) > 0 throughout.
std::vector<Complex> lambda_grid(int moduli_per_decade = 8, int arguments = 17,
                                 double min_modulus = 1e-4, double max_modulus = 1e8);

struct WeissSample {
  Complex lambda;
  double value;
};

std::vector<WeissSample> weiss_scan(const DiagonalSystem& sys, const CoefficientVector& xi, double x_norm,
                                    const std::vector<Complex>& grid, double tol = 1e-12);
std::vector<WeissSample> weiss_scan_orthonormal(const DiagonalSystem& sys, const std::vector<Complex>& grid,
                                                double tol = 1e-12);

double sup_value(const std::vector<WeissSample>& samples);
double sup_value(const std::vector<DecaySample>& samples);

/// Columns re_lambda,im_lambda,weiss_quotient.
report::CsvTable weiss_table(const std::vector<WeissSample>& samples);
/// Columns t,decay_sample.
report::CsvTable decay_table(const std::vector<DecaySample>& samples);

/// Upper cutoff T with sup|orbit| e^{-(Re(lambda) + mu_0) T} below tol, for
/// finite systems (where the orbit is bounded by sum |xi_k c_k|).
double laplace_cutoff(const DiagonalSystem& sys, const CoefficientVector& xi, Complex lambda, double tol);

/// Laplace transform of the observed orbit by quadrature; the numerical side
/// of the identity C (lambda + A)^{-1} x = int_0^inf e^{-lambda t} C T(t) x dt.
quadrature::ComplexResult laplace_of_orbit(const DiagonalSystem& sys, const CoefficientVector& xi,
                                           Complex lambda, double cutoff,
                                           const quadrature::QuadratureSpec& spec, double orbit_tol = 1e-14);

}  // namespace weissbench::semigroup
