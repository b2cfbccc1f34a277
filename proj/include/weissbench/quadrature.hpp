#pragma once

// Fixed-order Gauss-Legendre panels with halving-based error control, and the
// graded/oscillation-limited meshes needed for integrands of the form
// s^{a-1} cos(n s) and e^{-lambda t} y(t) with y blowing up like t^{-1/2}.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace weissbench::quadrature {

struct QuadratureSpec {
  double relative_tolerance = 1e-10;
  std::size_t max_panels = 200000;
  /// Ratio between consecutive panel endpoints of the geometric mesh toward a
  /// singular endpoint.
  double grading_ratio = 0.5;

  /// Throws Error(InvalidArgument) unless tolerance in [1e-14, 1e-2],
  /// max_panels >= 1 and grading_ratio in [0.1, 0.9].
  void validate() const;
};

template <class T>
struct Result {
  T value{};
  double error_estimate = 0.0;
  std::size_t panels = 0;
};

using RealResult = Result<double>;
using ComplexResult = Result<std::complex<double>>;

inline constexpr int kGaussOrder = 20;

/// Nodes on [-1, 1] (ascending) and their weights.
std::span<const double> gauss_nodes();
std::span<const double> gauss_weights();

/// Integrates f over the mesh cells. Each cell is evaluated with one Gauss
/// panel and with its two halves; the difference is the cell's error estimate.
/// Cells are bisected until the summed estimate is below
/// max(tol |I|, 64 eps sum|I_cell|) or max_panels is exceeded, which throws
/// Error(ToleranceNotMet). `fixed` is an analytically known contribution that
/// is added to the total (with its own error) before the test.
RealResult integrate_mesh(const std::function<double(double)>& f, std::span<const double> mesh,
                          const QuadratureSpec& spec, double fixed = 0.0, double fixed_error = 0.0);
ComplexResult integrate_mesh_complex(const std::function<std::complex<double>(double)>& f,
                                     std::span<const double> mesh, const QuadratureSpec& spec,
                                     std::complex<double> fixed = {}, double fixed_error = 0.0);

/// int_0^pi s^{a-1} cos(n s) ds for a > 0.
///
/// The innermost cell [0, delta] is summed from the power series of cos, the
/// cells up to pi/max(n,1) form a geometric mesh toward 0, and the rest of
/// [0, pi] is cut into cells no wider than half an oscillation period.
/// The exponent is meant for a in (0, 1) (singular) but anything in (0, 3]
/// is accepted so the same kernel serves smooth weights as well.
RealResult singular_oscillatory_integral(double exponent, unsigned n, const QuadratureSpec& spec);

/// Same integrals for every n = 0..n_max at once. Uses
///   int_0^pi s^{a-1} cos(n s) ds = n^{-a} int_0^{n pi} u^{a-1} cos u du
/// and accumulates the half-period pieces of the right-hand side, so the
/// whole table costs O(n_max) panels instead of O(n_max^2).
struct MomentTable {
  std::vector<double> values;
  std::vector<double> errors;
};
MomentTable cosine_moment_table(double exponent, std::size_t n_max, const QuadratureSpec& spec);

/// Gamma(x) on (0, 2], relative error well below 1e-12 (Lanczos, g = 7, with
/// reflection below 1/2). Throws Error(Domain) outside (0, 2].
double gamma_function(double x);

/// int_0^cutoff e^{-lambda t} orbit(t) dt for Re(lambda) > 0.
///
/// The orbit may blow up like t^{-1/2} at 0: near the origin the mesh is
/// geometric, and the last cell [0, delta] is estimated as delta*orbit(delta)
/// with that same quantity as its error bound; delta shrinks until this is
/// negligible. The caller picks the cutoff so that the discarded tail is
/// below tolerance.
ComplexResult laplace_quadrature(const std::function<double(double)>& orbit,
                                 std::complex<double> lambda, double cutoff,
                                 const QuadratureSpec& spec);

}  // namespace weissbench::quadrature
