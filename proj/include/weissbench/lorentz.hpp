#pragma once

// Distribution functions, decreasing rearrangements and Lorentz quasi-norms
// of piecewise-constant magnitude profiles on the half-line.
//
// Everything here is exact for step data: continuous functions enter only
// through a caller-chosen sampling (see StepFunction::sample), so all
// approximation error lives in that sampling and nowhere else.

#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace weissbench::lorentz {

/// Nonnegative piecewise-constant function on [b_0, b_n), zero elsewhere.
/// Segment i is the half-open interval [b_i, b_{i+1}) carrying values[i].
class StepFunction {
 public:
  /// Throws Error(InvalidArgument) unless the breakpoints are finite, nonnegative
  /// and strictly increasing (so no zero-length segment), there is exactly one
  /// value per segment, and every value is finite and >= 0.
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  enum class SamplePoint { Left, Midpoint };

  /// Samples |f| on the given mesh, one value per cell.
  static StepFunction sample(const std::function<double(double)>& f,
                             std::vector<double> breakpoints,
                             SamplePoint where = SamplePoint::Left);

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double start() const noexcept { return breakpoints_.front(); }
  double end() const noexcept { return breakpoints_.back(); }
  double length(std::size_t i) const noexcept { return breakpoints_[i + 1] - breakpoints_[i]; }

  /// Value at t (right-continuous), 0 outside the covered interval.
  double operator()(double t) const noexcept;

  /// c * f for c >= 0.
  StepFunction scaled(double c) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// The pair (p, q) of L^{p,q}; q == infinity selects the weak space L^{p,inf}.
struct LorentzIndex {
  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  /// Throws Error(InvalidArgument) unless p > 1 and q >= 1 (q may be infinite).
  LorentzIndex(double p, double q);
  static LorentzIndex weak(double p) { return {p, kInfinity}; }

  bool is_weak() const noexcept { return q == kInfinity; }

  double p;
  double q;
};

/// Measure of { t : f(t) > alpha }. Right-continuous, non-increasing in alpha.
double distribution_function(const StepFunction& f, double alpha);

/// Non-increasing rearrangement f* on [0, |supp covered|). Segments are sorted
/// by value and equal values merged, so the result depends only on the value
/// distribution of f.
StepFunction decreasing_rearrangement(const StepFunction& f);

/// ||f||_{L^{p,q}}. For q < inf this is the exact integral
///   ( sum_i v_i^q (p/q) (e_i^{q/p} - s_i^{q/p}) )^{1/q}
/// over the rearranged segments [s_i, e_i); for q = inf it is
/// max_i v_i e_i^{1/p}, the supremum of t^{1/p} f*(t).
double lorentz_norm(const StepFunction& f, LorentzIndex idx);

/// Exact integral of f*g over the common refinement of both meshes.
double holder_pairing(const StepFunction& f, const StepFunction& g);

/// Inclusion constant K with ||f||_{p,q2} <= K ||f||_{p,q1} for q1 <= q2,
/// namely (q1/p)^{1/q1 - 1/q2}. Indicators attain it when q2 is infinite.
double inclusion_constant(double p, double q1, double q2);

/// CSV with header `breakpoint,value`; the last row carries the final
/// breakpoint and an empty value cell. Numbers use 17 significant digits so
/// a write/read cycle is bit-exact.
std::string to_csv(const StepFunction& f);
StepFunction from_csv(std::string_view text);
void write_csv(const StepFunction& f, const std::string& path);
StepFunction read_csv(const std::string& path);

}  // namespace weissbench::lorentz
