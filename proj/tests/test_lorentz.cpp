#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "weissbench/counterexample.hpp"
#include "weissbench/error.hpp"
#include "weissbench/lorentz.hpp"

using namespace weissbench;
using namespace weissbench::lorentz;
using counterexample::Lcg64;

namespace {

constexpr double kInf = LorentzIndex::kInfinity;

// Dyadic lengths and values so distribution sums are exact.
StepFunction dyadic(Lcg64& rng) {
  const std::size_t n = 1 + rng.next() % 30;
  std::vector<double> b{static_cast<double>(rng.next() % 8) / 8.0}, v;
  for (std::size_t i = 0; i < n; ++i) {
    b.push_back(b.back() + static_cast<double>(1 + rng.next() % 32) / 32.0);
    v.push_back(static_cast<double>(rng.next() % 16) / 4.0);
  }
  return {b, v};
}

StepFunction random_step(Lcg64& rng) {
  const std::size_t n = 1 + rng.next() % 40;
  std::vector<double> b{0.0}, v;
  for (std::size_t i = 0; i < n; ++i) {
    b.push_back(b.back() + rng.uniform(0.001, 2.0));
    v.push_back(rng.uniform(0.0, 5.0));
  }
  return {b, v};
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("StepFunction validates its data") {
  CHECK_NOTHROW(StepFunction({0.0, 1.0}, {2.0}));
  CHECK_THROWS_AS(StepFunction({0.0}, {}), Error);
  CHECK_THROWS_AS(StepFunction({0.0, 1.0, 1.0}, {1.0, 2.0}), Error);  // zero-length
  CHECK_THROWS_AS(StepFunction({0.0, 1.0}, {-1.0}), Error);
  CHECK_THROWS_AS(StepFunction({0.0, 1.0}, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(StepFunction({-1.0, 1.0}, {1.0}), Error);
  CHECK_THROWS_AS(StepFunction({0.0, 1.0}, {std::nan("")}), Error);

  StepFunction f({1.0, 2.0, 4.0}, {3.0, 1.0});
  CHECK(f(0.5) == 0.0);
  CHECK(f(1.0) == 3.0);
  CHECK(f(2.0) == 1.0);
  CHECK(f(4.0) == 0.0);
  CHECK(f.length(1) == 2.0);
}

TEST_CASE("distribution function and rearrangement of a small example") {
  StepFunction f({0.0, 1.0, 3.0, 4.0}, {1.0, 3.0, 2.0});
  CHECK(distribution_function(f, 0.0) == 4.0);
  CHECK(distribution_function(f, 1.0) == 3.0);
  CHECK(distribution_function(f, 2.5) == 2.0);
  CHECK(distribution_function(f, 3.0) == 0.0);

  auto r = decreasing_rearrangement(f);
  CHECK(std::ranges::equal(r.breakpoints(), std::vector<double>{0.0, 2.0, 3.0, 4.0}));
  CHECK(std::ranges::equal(r.values(), std::vector<double>{3.0, 2.0, 1.0}));
}

TEST_CASE("ties are merged in the rearrangement") {
  StepFunction f({0.0, 1.0, 2.0, 3.0}, {2.0, 1.0, 2.0});
  auto r = decreasing_rearrangement(f);
  CHECK(std::ranges::equal(r.breakpoints(), std::vector<double>{0.0, 2.0, 3.0}));
  CHECK(std::ranges::equal(r.values(), std::vector<double>{2.0, 1.0}));
}

TEST_CASE("equimeasurability holds exactly on random dyadic data") {
  Lcg64 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto f = dyadic(rng);
    auto r = decreasing_rearrangement(f);
    for (double v : f.values())
      for (double a : {v, v + 0.125, v - 0.125, 0.0}) {
        if (a < 0.0) continue;
        REQUIRE(distribution_function(f, a) == distribution_function(r, a));
      }
    CHECK(std::ranges::is_sorted(r.values(), std::greater<>{}));
    CHECK(r.start() == 0.0);
  }
}

TEST_CASE("decreasing functions starting at 0 are fixed points") {
  StepFunction f({0.0, 0.5, 2.0, 2.25}, {4.0, 3.0, 0.5});
  auto r = decreasing_rearrangement(f);
  CHECK(std::ranges::equal(r.breakpoints(), f.breakpoints()));
  CHECK(std::ranges::equal(r.values(), f.values()));
}

TEST_CASE("indicator norms match the closed form") {
  for (double p : {1.5, 2.0, 4.0})
    for (double q : {1.0, 2.0, 3.0, kInf})
      for (double m : {0.25, 1.0, 5.0}) {
        StepFunction f({2.0, 2.0 + m}, {1.0});
        double expected = std::isinf(q) ? std::pow(m, 1.0 / p) : std::pow(p / q, 1.0 / q) * std::pow(m, 1.0 / p);
        CHECK(rel(lorentz_norm(f, {p, q}), expected) <= 1e-12);
      }
}

TEST_CASE("p = q agrees with the direct L^p integral") {
  Lcg64 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto f = random_step(rng);
    double p = 1.0 + rng.uniform(0.1, 5.0);
    double direct = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) direct += std::pow(f.values()[k], p) * f.length(k);
    CHECK(rel(lorentz_norm(f, {p, p}), std::pow(direct, 1.0 / p)) <= 1e-12);
  }
}

TEST_CASE("norms are homogeneous") {
  Lcg64 rng(13);
  for (int i = 0; i < 50; ++i) {
    auto f = random_step(rng);
    for (LorentzIndex idx : {LorentzIndex(2.0, 1.0), LorentzIndex(3.0, 4.0), LorentzIndex::weak(2.0)}) {
      const double n = lorentz_norm(f, idx);
      for (double c : {0.5, 2.0, 1024.0}) CHECK(lorentz_norm(f.scaled(c), idx) == c * n);
      CHECK(lorentz_norm(f.scaled(0.0), idx) == 0.0);
      CHECK(rel(lorentz_norm(f.scaled(3.7), idx), 3.7 * n) <= 1e-15);
    }
  }
}

TEST_CASE("Lorentz-scale inclusion with the sharp constant") {
  Lcg64 rng(17);
  const std::vector<double> qs{1.0, 1.5, 2.0, 4.0, 8.0, kInf};
  for (int i = 0; i < 100; ++i) {
    auto f = random_step(rng);
    for (double p : {1.5, 2.0, 3.0})
      for (std::size_t a = 0; a < qs.size(); ++a)
        for (std::size_t b = a; b < qs.size(); ++b) {
          double lhs = lorentz_norm(f, {p, qs[b]});
          double rhs = inclusion_constant(p, qs[a], qs[b]) * lorentz_norm(f, {p, qs[a]});
          CHECK(lhs <= rhs * (1.0 + 1e-12));
        }
  }
  // indicators attain the constant for the weak space
  StepFunction e({0.0, 3.0}, {1.0});
  for (double q1 : {1.0, 2.0, 5.0})
    CHECK(rel(lorentz_norm(e, LorentzIndex::weak(2.0)), inclusion_constant(2.0, q1, kInf) * lorentz_norm(e, {2.0, q1})) <=
          1e-14);
}

TEST_CASE("exponential decay in L^{2,1}") {
  for (double a : {0.5, 2.0}) {
    const std::size_t n = 200000;
    std::vector<double> b(n + 1);
    for (std::size_t i = 0; i <= n; ++i) b[i] = (40.0 / a) * static_cast<double>(i) / n;
    auto f = StepFunction::sample([a](double t) { return std::exp(-a * t); }, b, StepFunction::SamplePoint::Midpoint);
    CHECK(rel(lorentz_norm(f, {2.0, 1.0}), std::sqrt(std::numbers::pi / a)) <= 1e-5);
  }
}

TEST_CASE("weak norm of |x|^{-1/p} is one") {
  // left-endpoint samples overestimate by at most one grid ratio
  std::vector<double> b;
  for (int i = 0; i <= 6 * 200; ++i) b.push_back(std::pow(10.0, -6.0 + i / 200.0));
  auto f = StepFunction::sample([](double x) { return 1.0 / std::sqrt(x); }, b);
  double w = lorentz_norm(f, LorentzIndex::weak(2.0));
  CHECK(w >= 1.0);
  CHECK(w <= std::pow(10.0, 1.0 / 400.0) * 1.0001);
}

TEST_CASE("index validation") {
  CHECK_THROWS_AS(LorentzIndex(1.0, 2.0), Error);
  CHECK_THROWS_AS(LorentzIndex(2.0, 0.5), Error);
  CHECK(LorentzIndex::weak(3.0).is_weak());
}

TEST_CASE("Holder pairing is exact on overlaps") {
  StepFunction f({0.0, 1.0, 2.0}, {2.0, 3.0});
  StepFunction g({0.5, 1.5}, {4.0});
  CHECK(holder_pairing(f, g) == 2.0 * 4.0 * 0.5 + 3.0 * 4.0 * 0.5);
  StepFunction far({5.0, 6.0}, {1.0});
  CHECK(holder_pairing(f, far) == 0.0);
}

TEST_CASE("CSV round-trip is bit-exact") {
  Lcg64 rng(19);
  auto f = random_step(rng);
  auto text = to_csv(f);
  CHECK(text.rfind("breakpoint,value\n", 0) == 0);
  CHECK(text.substr(text.size() - 2) == ",\n");
  auto g = from_csv(text);
  CHECK(std::ranges::equal(f.breakpoints(), g.breakpoints()));
  CHECK(std::ranges::equal(f.values(), g.values()));

  CHECK_THROWS_AS(from_csv("wrong,header\n0,1\n1,\n"), Error);
  CHECK_THROWS_AS(from_csv("breakpoint,value\n0,1\n1,2\n"), Error);
  CHECK_THROWS_AS(from_csv("breakpoint,value\n0,x\n1,\n"), Error);
}
