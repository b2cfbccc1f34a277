#include <cmath>
#include <numbers>

#include "doctest.h"
#include "weissbench/counterexample.hpp"
#include "weissbench/error.hpp"
#include "weissbench/semigroup.hpp"

using namespace weissbench;
using namespace weissbench::semigroup;
using counterexample::Lcg64;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

DiagonalSystem random_finite(Lcg64& rng, std::vector<double>& xi) {
  const std::size_t n = 1 + rng.next() % 6;
  std::vector<double> mu, c;
  xi.clear();
  double m = rng.uniform(0.2, 3.0);
  for (std::size_t k = 0; k < n; ++k) {
    mu.push_back(m);
    m *= rng.uniform(1.3, 5.0);
    c.push_back(rng.uniform(-3.0, 3.0));
    xi.push_back(rng.uniform(-1.0, 1.0));
  }
  return DiagonalSystem::finite(mu, c);
}

}  // namespace

TEST_CASE("system construction") {
  CHECK_THROWS_AS(DiagonalSystem::finite({1.0, 1.0}, {1.0, 1.0}), Error);
  CHECK_THROWS_AS(DiagonalSystem::finite({0.0, 1.0}, {1.0, 1.0}), Error);
  CHECK_THROWS_AS(DiagonalSystem::finite({1.0, 2.0}, {1.0}), Error);
  // |c_{k+1}/c_k| growing breaks the geometric tail argument
  CHECK_THROWS_AS(DiagonalSystem::from_rules([](std::size_t k) { return std::pow(4.0, k); },
                                             [](std::size_t k) { return std::pow(2.0, k * k); }, 20),
                  Error);
  auto d = DiagonalSystem::dyadic(30);
  CHECK(d.mu(3) == 64.0);
  CHECK(d.c(3) == 8.0);
  CHECK_FALSE(d.is_finite());
  CHECK(d.resolvent_series_converges());
}

TEST_CASE("single-mode orbit and resolvent") {
  auto sys = DiagonalSystem::finite({2.0}, {3.0});
  auto xi = CoefficientVector::finite({0.5});
  CHECK(orbit_observation(sys, xi, 0.7, 1e-12).value == doctest::Approx(0.5 * 3.0 * std::exp(-1.4)).epsilon(1e-15));
  const Complex lambda(1.0, 10.0);
  CHECK(std::abs(resolvent_observation(sys, xi, lambda, 1e-12).value - 1.5 / (lambda + 2.0)) <= 1e-15);
  CHECK(weiss_quotient(sys, xi, 1.0, lambda) == doctest::Approx(1.5 / std::abs(lambda + 2.0)).epsilon(1e-14));
  CHECK(weiss_quotient(sys, CoefficientVector::finite({0.0}), 1.0, lambda) == 0.0);
}

TEST_CASE("dyadic system with three active coefficients at t = 1") {
  auto sys = DiagonalSystem::dyadic();
  auto xi = CoefficientVector::finite({1.0, 1.0, 1.0});
  const double expected = std::exp(-1.0) + 2.0 * std::exp(-4.0) + 4.0 * std::exp(-16.0);
  CHECK(rel(orbit_observation(sys, xi, 1.0, 1e-14).value, expected) <= 1e-15);
}

TEST_CASE("truncation overflow when n_active is too small") {
  auto sys = DiagonalSystem::dyadic(6);
  auto xi = CoefficientVector::from_rule([](std::size_t) { return 1.0; }, 1.0);
  CHECK_THROWS_AS(orbit_observation(sys, xi, 1e-8, 1e-12), Error);
  CHECK_NOTHROW(orbit_observation(DiagonalSystem::dyadic(64), xi, 1e-8, 1e-12));
}

TEST_CASE("truncation honesty") {
  auto xi = CoefficientVector::from_rule([](std::size_t k) { return 1.0 / (1.0 + k); }, 1.0);
  auto a = DiagonalSystem::dyadic(40), b = DiagonalSystem::dyadic(64);
  for (double t : {1e-6, 1e-3, 0.1, 1.0}) {
    auto coarse = orbit_observation(a, xi, t, 1e-6);
    auto fine = orbit_observation(b, xi, t, 1e-13);
    CHECK(std::abs(coarse.value - fine.value) <= coarse.tail_bound + fine.tail_bound);
    CHECK(coarse.tail_bound < 1e-6);
  }
  const Complex lambda(0.5, 3.0);
  auto r1 = resolvent_observation(a, xi, lambda, 1e-5);
  auto r2 = resolvent_observation(b, xi, lambda, 1e-13);
  CHECK(std::abs(r1.value - r2.value) <= r1.tail_bound + r2.tail_bound);
}

TEST_CASE("semigroup law at the observation level") {
  Lcg64 rng(5);
  for (int i = 0; i < 20; ++i) {
    std::vector<double> xi;
    auto sys = random_finite(rng, xi);
    const double t1 = rng.uniform(0.0, 2.0), t2 = rng.uniform(0.01, 2.0);
    std::vector<double> shifted(xi.size());
    for (std::size_t k = 0; k < xi.size(); ++k) shifted[k] = xi[k] * std::exp(-sys.mu(k) * t1);
    const double lhs = orbit_observation(sys, CoefficientVector::finite(xi), t1 + t2, 1e-15).value;
    const double rhs = orbit_observation(sys, CoefficientVector::finite(shifted), t2, 1e-15).value;
    CHECK(std::abs(lhs - rhs) <= 1e-13 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("Laplace identity on random finite systems") {
  Lcg64 rng(23);
  quadrature::QuadratureSpec spec;
  for (int i = 0; i < 8; ++i) {
    std::vector<double> xi_v;
    auto sys = random_finite(rng, xi_v);
    auto xi = CoefficientVector::finite(xi_v);
    for (Complex lambda : {Complex(1.0, 0.0), Complex(0.05, 2.0), Complex(20.0, -300.0)}) {
      auto series = resolvent_observation(sys, xi, lambda, 1e-15).value;
      auto quad = laplace_of_orbit(sys, xi, lambda, laplace_cutoff(sys, xi, lambda, 1e-14), spec).value;
      CHECK(std::abs(series - quad) <= 1e-6 * (1.0 + std::abs(series)));
    }
  }
}

TEST_CASE("orthonormal Weiss norm") {
  auto one = DiagonalSystem::finite({1.0}, {1.0});
  CHECK(weiss_norm_orthonormal(one, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  auto zero = DiagonalSystem::finite({1.0, 2.0}, {0.0, 0.0});
  CHECK(weiss_norm_orthonormal(zero, Complex(3.0, 1.0)) == 0.0);

  auto sq = DiagonalSystem::square_root_observation();
  double sup = 0.0;
  for (double r : log_grid(1e-6, 1e8, 8)) sup = std::max(sup, weiss_norm_orthonormal(sq, r));
  CHECK(std::isfinite(sup));
  CHECK(sup < 2.0);

  auto divergent = DiagonalSystem::from_rules([](std::size_t k) { return std::pow(2.0, k); },
                                              [](std::size_t k) { return std::pow(4.0, k); }, 40);
  try {
    weiss_norm_orthonormal(divergent, 1.0);
    FAIL("expected DIVERGENT_SUM");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivergentSum);
  }
}

TEST_CASE("decay profile of one mode peaks at 1/(2 mu)") {
  const double mu = 3.0;
  auto sys = DiagonalSystem::finite({mu}, {1.0});
  auto xi = CoefficientVector::finite({1.0});
  auto grid = log_grid(1e-4, 10.0, 200);
  grid.push_back(1.0 / (2.0 * mu));
  std::sort(grid.begin(), grid.end());
  auto prof = decay_profile(sys, xi, 1.0, grid);
  CHECK(rel(sup_value(prof), 1.0 / std::sqrt(2.0 * std::numbers::e * mu)) <= 1e-14);
  for (const auto& s : decay_profile(sys, CoefficientVector::finite({0.0}), 1.0, grid)) CHECK(s.value == 0.0);
}

TEST_CASE("witness orbit at t = 4^-5") {
  quadrature::QuadratureSpec spec;
  auto w = counterexample::make_witness(counterexample::CounterexampleParams::from_q(4.0), spec);
  const double t = std::pow(4.0, -5.0);
  auto y = orbit_observation(w.system, w.xi, t, 1e-13);
  // direct 60-term sum at 40 digits
  CHECK(rel(y.value, 36.457739943617383555) <= 1e-9);
  CHECK(y.value >= 9.5773937040512725068);
}

TEST_CASE("grids") {
  auto g = log_grid(1e-8, 1.0, 8);
  CHECK(g.size() == 65);
  CHECK(g.front() == 1e-8);
  CHECK(g.back() == 1.0);
  auto lg = lambda_grid();
  CHECK(lg.size() == 97 * 17);
  for (auto l : lg) CHECK(l.real() > 0.0);
  CHECK_THROWS_AS(log_grid(1.0, 1.0, 4), Error);
}

TEST_CASE("scan tables use the documented headers") {
  std::vector<WeissSample> w{{Complex(1.0, 2.0), 0.5}};
  CHECK(weiss_table(w).str() == "re_lambda,im_lambda,weiss_quotient\n1,2,0.5\n");
  std::vector<DecaySample> d{{0.25, 0.125}};
  CHECK(decay_table(d).str() == "t,decay_sample\n0.25,0.125\n");
}
