#include "weissbench/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "weissbench/error.hpp"

namespace weissbench::quadrature {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct GaussRule {
  std::array<double, kGaussOrder> nodes{};
  std::array<double, kGaussOrder> weights{};

  GaussRule() {
    constexpr int n = kGaussOrder;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      // Newton from cos(...) converges to the i-th largest root.
      nodes[static_cast<std::size_t>(n - 1 - i)] = x;
      weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussRule& rule() {
  static const GaussRule r;
  return r;
}

template <class T>
T gauss_panel(const std::function<T(double)>& f, double a, double b) {
  const auto& g = rule();
  double half = 0.5 * (b - a);
  double mid = 0.5 * (a + b);
  T acc{};
  for (std::size_t i = 0; i < g.nodes.size(); ++i) acc += g.weights[i] * f(mid + half * g.nodes[i]);
  return acc * half;
}

template <class T>
struct Panel {
  double a, b;
  T coarse, left, right;
  T fine() const { return left + right; }
  double err() const { return std::abs(fine() - coarse); }
};

template <class T>
Panel<T> make_panel(const std::function<T(double)>& f, double a, double b, T coarse) {
  double m = 0.5 * (a + b);
  return {a, b, coarse, gauss_panel(f, a, m), gauss_panel(f, m, b)};
}

template <class T>
Result<T> integrate_mesh_impl(const std::function<T(double)>& f, std::span<const double> mesh,
                              const QuadratureSpec& spec, T fixed, double fixed_error) {
  spec.validate();
  if (mesh.size() < 2) return {fixed, fixed_error, 0};

  std::vector<Panel<T>> panels;
  panels.reserve(mesh.size() - 1);
  for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
    if (!(mesh[i + 1] > mesh[i])) throw Error(ErrorCode::InvalidArgument, "quadrature mesh must be increasing");
    panels.push_back(make_panel(f, mesh[i], mesh[i + 1], gauss_panel(f, mesh[i], mesh[i + 1])));
  }

  while (true) {
    T total = fixed;
    double err = fixed_error;
    double scale = std::abs(fixed);
    for (const auto& p : panels) {
      T v = p.fine();
      total += v;
      err += p.err();
      scale += std::abs(v);
    }
    double target = std::max(spec.relative_tolerance * std::abs(total), 64.0 * kEps * scale);
    if (err <= target) return {total, err, panels.size()};
    if (panels.size() >= spec.max_panels)
      throw Error(ErrorCode::ToleranceNotMet,
                  "error estimate " + std::to_string(err) + " exceeds target " + std::to_string(target) +
                      " at " + std::to_string(panels.size()) + " panels");

    const double threshold = target / static_cast<double>(panels.size());
    std::size_t room = spec.max_panels - panels.size();
    std::vector<Panel<T>> next;
    next.reserve(panels.size() * 2);
    bool split = false;
    for (const auto& p : panels) {
      if (room > 0 && p.err() > threshold) {
        split = true;
        double m = 0.5 * (p.a + p.b);
        next.push_back(make_panel(f, p.a, m, p.left));
        next.push_back(make_panel(f, m, p.b, p.right));
        --room;
      } else {
        next.push_back(p);
      }
    }
    if (!split)
      throw Error(ErrorCode::ToleranceNotMet, "error estimate " + std::to_string(err) + " exceeds target " +
                                                  std::to_string(target) + " and no panel can improve it");
    panels = std::move(next);
  }
}

// int_0^delta s^{a-1} cos(n s) ds summed termwise.
double power_cosine_head(double a, double n, double delta) {
  double x2 = (n * delta) * (n * delta);
  double term = 1.0;  // x^{2k}/(2k)!
  double sum = 0.0;
  for (int k = 0; k < 200; ++k) {
    double contrib = term / (a + 2.0 * k);
    sum += (k % 2 == 0) ? contrib : -contrib;
    if (std::abs(contrib) <= 1e-18 * std::abs(sum)) break;
    term *= x2 / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
  }
  return std::pow(delta, a) * sum;
}

// delta*ratio^m ... delta, strictly increasing, starting at the innermost point.
std::vector<double> geometric_points(double outer, double ratio, int count) {
  std::vector<double> pts(static_cast<std::size_t>(count) + 1);
  double x = outer;
  for (int j = count; j >= 0; --j) {
    pts[static_cast<std::size_t>(j)] = x;
    x *= ratio;
  }
  return pts;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(relative_tolerance >= 1e-14 && relative_tolerance <= 1e-2))
    throw Error(ErrorCode::InvalidArgument, "relative_tolerance must lie in [1e-14, 1e-2]");
  if (max_panels < 1) throw Error(ErrorCode::InvalidArgument, "max_panels must be positive");
  if (!(grading_ratio >= 0.1 && grading_ratio <= 0.9))
    throw Error(ErrorCode::InvalidArgument, "grading_ratio must lie in [0.1, 0.9]");
}

std::span<const double> gauss_nodes() { return rule().nodes; }
std::span<const double> gauss_weights() { return rule().weights; }

RealResult integrate_mesh(const std::function<double(double)>& f, std::span<const double> mesh,
                          const QuadratureSpec& spec, double fixed, double fixed_error) {
  return integrate_mesh_impl<double>(f, mesh, spec, fixed, fixed_error);
}

ComplexResult integrate_mesh_complex(const std::function<std::complex<double>(double)>& f,
                                     std::span<const double> mesh, const QuadratureSpec& spec,
                                     std::complex<double> fixed, double fixed_error) {
  return integrate_mesh_impl<std::complex<double>>(f, mesh, spec, fixed, fixed_error);
}

RealResult singular_oscillatory_integral(double exponent, unsigned n, const QuadratureSpec& spec) {
  spec.validate();
  if (!(exponent > 0.0 && exponent <= 3.0))
    throw Error(ErrorCode::Domain, "power-cosine exponent must lie in (0, 3]");

  const double a = exponent;
  const double freq = static_cast<double>(n);
  const unsigned cells = std::max(n, 1u);
  const double width = kPi / cells;

  // Graded cells cover [width * ratio^m, width] with ratio^m <= 1e-4; the series
  // takes care of the rest exactly.
  const int m = static_cast<int>(std::ceil(std::log(1e-4) / std::log(spec.grading_ratio)));
  std::vector<double> mesh = geometric_points(width, spec.grading_ratio, m);
  for (unsigned k = 2; k <= cells; ++k) mesh.push_back(k == cells ? kPi : k * width);

  const double head = power_cosine_head(a, freq, mesh.front());
  auto integrand = [a, freq](double s) { return std::pow(s, a - 1.0) * std::cos(freq * s); };
  return integrate_mesh(integrand, mesh, spec, head, 4.0 * kEps * std::abs(head));
}

MomentTable cosine_moment_table(double exponent, std::size_t n_max, const QuadratureSpec& spec) {
  spec.validate();
  if (!(exponent > 0.0 && exponent <= 3.0))
    throw Error(ErrorCode::Domain, "power-cosine exponent must lie in (0, 3]");

  const double a = exponent;
  MomentTable table;
  table.values.resize(n_max + 1);
  table.errors.resize(n_max + 1);

  auto zero = singular_oscillatory_integral(a, 0, spec);
  table.values[0] = zero.value;
  table.errors[0] = zero.error_estimate;
  if (n_max == 0) return table;

  // F(n pi) = int_0^{n pi} u^{a-1} cos u du, built from half periods.
  auto first = singular_oscillatory_integral(a, 1, spec);
  double partial = first.value;
  double partial_err = first.error_estimate;
  auto integrand = [a](double u) { return std::pow(u, a - 1.0) * std::cos(u); };
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n > 1) {
      double lo = (n - 1) * kPi;
      std::array<double, 3> mesh{lo, lo + 0.5 * kPi, n * kPi};
      auto piece = integrate_mesh(integrand, mesh, spec);
      partial += piece.value;
      partial_err += piece.error_estimate;
    }
    double scale = std::pow(static_cast<double>(n), -a);
    table.values[n] = scale * partial;
    table.errors[n] = scale * partial_err;
  }
  return table;
}

double gamma_function(double x) {
  if (!(x > 0.0 && x <= 2.0)) throw Error(ErrorCode::Domain, "gamma_function is defined here on (0, 2]");

  static constexpr double g = 7.0;
  static constexpr std::array<double, 9> coef{
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

  auto lanczos = [](double z) {
    // Gamma(z + 1)
    double sum = coef[0];
    for (std::size_t i = 1; i < coef.size(); ++i) sum += coef[i] / (z + static_cast<double>(i));
    double t = z + g + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
  };

  if (x < 0.5) return kPi / (std::sin(kPi * x) * lanczos(-x));  // Gamma(1 - x) = lanczos(-x)
  return lanczos(x - 1.0);
}

ComplexResult laplace_quadrature(const std::function<double(double)>& orbit, std::complex<double> lambda,
                                 double cutoff, const QuadratureSpec& spec) {
  spec.validate();
  if (!(lambda.real() > 0.0)) throw Error(ErrorCode::Domain, "Laplace quadrature needs Re(lambda) > 0");
  if (!(cutoff > 0.0) || !std::isfinite(cutoff))
    throw Error(ErrorCode::InvalidArgument, "Laplace cutoff must be positive and finite");

  double width = std::min(cutoff / 16.0, 2.0 / lambda.real());
  if (lambda.imag() != 0.0) width = std::min(width, kPi / std::abs(lambda.imag()));

  std::vector<double> tail;
  const auto uniform_cells = static_cast<std::size_t>(std::ceil(cutoff / width));
  for (std::size_t k = 2; k <= uniform_cells; ++k) tail.push_back(k == uniform_cells ? cutoff : k * width);

  auto integrand = [&orbit, lambda](double t) { return std::exp(-lambda * t) * orbit(t); };

  const int step = static_cast<int>(std::ceil(std::log(1e-4) / std::log(spec.grading_ratio)));
  auto delta_for = [&](int m) { return width * std::pow(spec.grading_ratio, m); };
  auto run = [&](int m, bool count_head) {
    std::vector<double> mesh = geometric_points(width, spec.grading_ratio, m);
    mesh.insert(mesh.end(), tail.begin(), tail.end());
    if (mesh.size() > spec.max_panels)
      throw Error(ErrorCode::ToleranceNotMet, "Laplace mesh near the origin exceeds max_panels");
    const double head = mesh.front() * orbit(mesh.front());
    return integrate_mesh_complex(integrand, mesh, spec, std::complex<double>(head, 0.0),
                                  count_head ? std::abs(head) : 0.0);
  };

  // The first pass only sizes [0, delta]; its head error is not yet known to be small.
  int m = 2 * step;
  double scale = std::abs(run(m, false).value);
  while (true) {
    auto small_enough = [&](int depth) {
      double delta = delta_for(depth);
      return std::abs(delta * orbit(delta)) <= 0.01 * spec.relative_tolerance * scale;
    };
    while (!small_enough(m)) {
      m += step;
      if (delta_for(m) < 1e-300) throw Error(ErrorCode::ToleranceNotMet, "Laplace integrand not integrable at 0");
    }
    auto res = run(m, true);
    if (std::abs(res.value) >= 0.5 * scale) return res;
    scale = std::abs(res.value);
  }
}

}  // namespace weissbench::quadrature
