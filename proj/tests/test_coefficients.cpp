#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "dwave/coefficients.hpp"
#include "dwave/errors.hpp"
#include "oracles.hpp"

using namespace dwave;
using doctest::Approx;

namespace {

CoefficientProfile pa(double c, double k) {
  return CoefficientProfile::power_law(c, k, CoefficientRole::Diffusion);
}
CoefficientProfile pb(double c, double k) {
  return CoefficientProfile::power_law(c, k, CoefficientRole::Drift);
}

}  // namespace

TEST_CASE("power law and damping evaluation") {
  CHECK(pa(1, 0.5)(0.25) == Approx(0.5).epsilon(1e-15));
  DampingProfile h{0.2, 0.8, 1, 1};
  CHECK(h(0.1) == 0.0);
  CHECK(h(0.5) == Approx(0.09).epsilon(1e-14));
  DampingProfile step{0.2, 0.8, 0, 0};
  CHECK(step(0.2) == 1.0);
  CHECK(step(0.8) == 1.0);
  CHECK(step(0.81) == 0.0);
  CHECK_THROWS_AS(pa(1, 0.5)(1.5), DomainError);
  CHECK_THROWS_AS(h(-0.1), DomainError);
  CHECK_THROWS_AS((DampingProfile{0.8, 0.2, 1, 1}.validate()), ConfigurationError);
}

TEST_CASE("tabulated profiles") {
  auto a = CoefficientProfile::tabulated({0, 0.5, 1}, {1, 1, 1},
                                         CoefficientRole::Diffusion);
  CHECK(a(0.3) == Approx(1.0));
  CHECK(a.derivative(0.3) == Approx(0.0));
  // monotone data stays monotone between samples
  auto m = CoefficientProfile::tabulated({0, 0.1, 0.2, 1}, {0, 0.5, 0.55, 1},
                                         CoefficientRole::Diffusion);
  double prev = -1;
  for (int i = 0; i <= 1000; ++i) {
    double v = m(i / 1000.0);
    CHECK(v >= prev);
    prev = v;
  }
  // central differences on the grid
  auto q = CoefficientProfile::tabulated({0, 0.25, 0.5, 0.75, 1},
                                         {0, 0.0625, 0.25, 0.5625, 1},
                                         CoefficientRole::Diffusion);
  CHECK(q.derivative(0.5) == Approx(1.0));
  CHECK(q.derivative(0.0) == Approx(0.25));
  CHECK(q.derivative(0.625) == Approx(1.25));
  CHECK_THROWS_AS(CoefficientProfile::tabulated({0, 1}, {0, 1},
                                                CoefficientRole::Diffusion),
                  ConfigurationError);
  CHECK_THROWS_AS(CoefficientProfile::tabulated({0, 0.5, 1}, {0, 0, 1},
                                                CoefficientRole::Diffusion),
                  InvalidCoefficientError);
}

TEST_CASE("tabulated profile from csv") {
  auto path = std::filesystem::temp_directory_path() / "dwave_table.csv";
  {
    std::ofstream o(path);
    o << "x,value\n0,0\n0.5,0.7071067811865476\n1,1\n";
  }
  auto a = CoefficientProfile::from_csv(path.string(), CoefficientRole::Diffusion);
  CHECK(a(0.5) == Approx(0.7071067811865476));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(CoefficientProfile::from_csv("/nonexistent.csv",
                                               CoefficientRole::Diffusion),
                  InputError);
}

TEST_CASE("degeneracy constant") {
  auto wd = degeneracy_constant(pa(1, 0.5));
  CHECK(wd.K == 0.5);
  CHECK(wd.classification == Degeneracy::WeaklyDegenerate);
  auto sd = degeneracy_constant(pa(1, 1.5));
  CHECK(sd.K == 1.5);
  CHECK(sd.classification == Degeneracy::StronglyDegenerate);
  for (double c : {0.1, 1.0, 10.0})
    CHECK(std::abs(degeneracy_constant(pa(c, 0.7)).K - 0.7) <= 1e-12);
  CHECK(degeneracy_constant(pa(1, 2.5)).classification == Degeneracy::OutOfScope);
  CHECK(degeneracy_constant(pa(1, 0)).classification == Degeneracy::NonDegenerate);

  // sampled path for a table of x^2
  std::vector<double> xs, vs;
  for (int i = 0; i <= 400; ++i) {
    double x = i / 400.0;
    xs.push_back(x);
    vs.push_back(x * x);
  }
  auto t = CoefficientProfile::tabulated(xs, vs, CoefficientRole::Diffusion);
  auto rep = degeneracy_constant(t);
  CHECK(rep.K == Approx(2.0).epsilon(1e-12));
  CHECK(rep.classification == Degeneracy::OutOfScope);
}

TEST_CASE("feller weight and sigma") {
  WeightEvaluator w(pa(1, 0.5), pb(1, 0));
  CHECK(w.eta(0.5) == 1.0);
  CHECK(w.eta(1.0) == Approx(std::exp(2 - std::sqrt(2.0))).epsilon(1e-12));
  CHECK(w.eta(0.0) == Approx(std::exp(-std::sqrt(2.0))).epsilon(1e-12));
  for (double x : {0.01, 0.2, 0.7})
    CHECK(w.eta(x) == Approx(oracle::eta_sqrt_const(1.0, x)).epsilon(1e-12));
  CHECK(w.sigma(1.0) == Approx(1 / std::exp(2 - std::sqrt(2.0))).epsilon(1e-12));
  CHECK(w.sigma(0.5) == Approx(std::sqrt(0.5)).epsilon(1e-14));

  WeightEvaluator z(pa(1, 0.5), CoefficientProfile::zero_drift());
  for (double x : {0.0, 0.1, 0.9}) {
    CHECK(z.eta(x) == 1.0);
    CHECK(z.sigma(x) == pa(1, 0.5)(x));
  }

  std::vector<double> xs;
  for (int i = 0; i <= 50; ++i) xs.push_back(std::pow(i / 50.0, 2));
  auto batch = w.eta(xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(batch[i] == Approx(w.eta(xs[i])).epsilon(1e-11));
    if (i) CHECK(batch[i] >= batch[i - 1]);
  }

  // b/a ~ 1/x is not integrable at 0
  WeightEvaluator bad(pa(1, 1), pb(1, 0));
  CHECK_THROWS_AS(bad.eta(0.0), IntegrabilityError);
  CHECK(bad.eta(0.25) == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("hardy-poincare constant") {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  CHECK(hardy_poincare_constant(pa(1, 0.5), CoefficientProfile::zero_drift(), 0.5) ==
        Approx(4 + std::sqrt(2.0) / pi2).epsilon(1e-10));
  auto one = CoefficientProfile::tabulated({0, 0.5, 1}, {1, 1, 1},
                                           CoefficientRole::Diffusion);
  CHECK(hardy_poincare_constant(one, CoefficientProfile::zero_drift(), 0.5) ==
        Approx(4 + 1 / pi2).epsilon(1e-12));
  double prev = 1e300;
  for (int i = 1; i <= 9; ++i) {
    double c = hardy_poincare_constant(pa(1, 0.5), pb(1, 0), i / 10.0);
    CHECK(c <= prev * (1 + 1e-14));
    prev = c;
  }
  auto best = best_hardy_poincare_constant(pa(1, 0.5), pb(1, 0));
  CHECK(best.beta == Approx(0.9));
  CHECK_THROWS_AS(hardy_poincare_constant(pa(1, 0.5), pb(1, 0), 1.0), DomainError);
}

TEST_CASE("M constants") {
  // x1 + 2eps = 0.15, x2 - 2eps = 0.8
  auto m = m_constants(pa(1, 0.5), pb(1, 0), 0.1, 0.85, 0.025);
  CHECK(m.m01 == Approx(std::sqrt(0.15)).epsilon(1e-12));
  CHECK(m.m11 == Approx(0.2 / std::sqrt(0.8)).epsilon(1e-12));
  CHECK(m.m02 == Approx(0.5).epsilon(1e-9));

  auto z = m_constants(pa(1, 0.5), CoefficientProfile::zero_drift(), 0.1, 0.85, 0.025);
  CHECK(z.m01 == 0.0);
  CHECK(z.m11 == 0.0);

  CHECK_THROWS_AS(m_constants(pa(1, 0.5), pb(1, 0), 0.4, 0.5, 0.05),
                  ConfigurationError);
}

TEST_CASE("M/N constants against brute force") {
  struct Pair {
    CoefficientProfile a, b;
    double x1, x2, eps;
  };
  std::vector<Pair> cases = {{pa(1, 0.5), pb(1, 0), 0.1, 0.85, 0.025},
                             {pa(1, 1.5), pb(0.125, 1), 0.25, 0.95, 0.025},
                             {pa(1, 0.5), pb(0.5, 0), 0.1, 0.85, 0.025},
                             {pa(1, 1.5), pb(0.125, 1), 0.2, 0.9, 0.05}};
  for (const auto& c : cases) {
    auto m = m_constants(c.a, c.b, c.x1, c.x2, c.eps);
    auto o = oracle::brute_m(c.a, c.b, c.x1 + 2 * c.eps, c.x2 - 2 * c.eps);
    CHECK(m.m01 == Approx(o[0]).epsilon(1e-6));
    CHECK(m.m02 == Approx(o[1]).epsilon(1e-6));
    CHECK(m.m11 == Approx(o[2]).epsilon(1e-6));
    CHECK(m.m12 == Approx(o[3]).epsilon(1e-6));
    auto n = n_constants(c.a, c.b);
    auto on = oracle::brute_n(c.a, c.b);
    CHECK(n.n1 == Approx(on[0]).epsilon(1e-6));
    CHECK(n.n2 == Approx(on[1]).epsilon(1e-6));
  }
}

TEST_CASE("N constants") {
  auto n = n_constants(pa(1, 0.5), pb(0.5, 0));
  CHECK(std::abs(n.n1 - 0.5) < 1e-9);
  CHECK(std::abs(n.n2 - 0.5) < 1e-9);
  auto s = n_constants(pa(1, 1.5), pb(0.125, 1));
  CHECK(std::abs(s.n1 - 1.5) < 1e-9);
  CHECK(std::abs(s.n2 - 0.125) < 1e-9);
  auto z = n_constants(pa(1, 1.3), CoefficientProfile::zero_drift());
  CHECK(z.n1 == Approx(1.3).epsilon(1e-12));
  CHECK(z.n2 == 0.0);
}

TEST_CASE("hypothesis checks") {
  auto wd = check_hypothesis_internal(pa(1, 0.5), pb(1, 0), 0.1, 0.85, 0.025);
  CHECK(wd.verdict);
  CHECK(wd.bound1 == 0.75);
  auto sd = check_hypothesis_internal(pa(1, 1.5), pb(0.125, 1), 0.25, 0.95, 0.025);
  CHECK(sd.verdict);
  // x2 - 2eps = 0.3 sits below the threshold
  auto low = check_hypothesis_internal(pa(1, 0.5), pb(1, 0), 0.1, 0.35, 0.025);
  CHECK_FALSE(low.verdict);
  CHECK(low.margin1 == Approx(0.75 - std::sqrt(0.15) - 0.7 / std::sqrt(0.3)).epsilon(1e-10));

  auto t1 = check_hypothesis_transmission(pa(1, 0.5), pb(0.5, 0));
  CHECK(t1.verdict);
  CHECK(t1.margin1 == Approx(0.75).epsilon(1e-9));
  CHECK(t1.margin2 == Approx(0.25).epsilon(1e-9));
  auto t2 = check_hypothesis_transmission(pa(1, 1.5), pb(0.125, 1));
  CHECK(t2.verdict);
  CHECK(t2.margin1 == Approx(0.25).epsilon(1e-9));
  CHECK(t2.margin2 == Approx(0.125).epsilon(1e-9));
  auto t3 = check_hypothesis_transmission(pa(1, 1.9), CoefficientProfile::zero_drift());
  CHECK(t3.verdict);

  CHECK_THROWS_AS(check_hypothesis_transmission(pa(1, 2), pb(1, 0)), OutOfScopeError);

  // scale invariance
  for (double c : {0.1, 7.0}) {
    auto s = check_hypothesis_internal(pa(1, 0.5).scaled(c), pb(1, 0).scaled(c),
                                       0.1, 0.85, 0.025);
    CHECK(s.verdict == wd.verdict);
    CHECK(s.margin1 == Approx(wd.margin1).epsilon(1e-10));
  }
}

TEST_CASE("damped region threshold") {
  double s = damped_region_threshold(pa(1, 0.5), pb(1, 0));
  double closed = (41 - 3 * std::sqrt(73.0)) / 32;
  CHECK(std::abs(s - closed) < 1e-6);
  CHECK(std::round(s * 1e4) / 1e4 == Approx(0.4802).epsilon(1e-12));

  auto parts = threshold_parts(pa(1, 1.5), pb(0.125, 1));
  CHECK(std::abs(parts.left - oracle::sd_left_threshold()) < 1e-8);
  CHECK(std::abs(parts.right - oracle::sd_right_threshold()) < 1e-8);
  CHECK(std::abs(damped_region_threshold(pa(1, 1.5), pb(0.125, 1)) - 0.8471) < 5e-4);

  // b == 0: the first condition holds for every s; the second still needs
  // (1 - s)/(2s) < 3/4, i.e. s > 0.4.
  auto zero = threshold_parts(pa(1, 0.5), CoefficientProfile::zero_drift());
  CHECK(zero.left == 0.0);
  CHECK(zero.right == Approx(0.4).epsilon(1e-9));

  // verdict flips across the threshold with x1 + 2eps tiny
  const double eps = 2.5e-7;
  auto below = check_hypothesis_internal(pa(1, 0.5), pb(1, 0), 1e-6 - 2 * eps,
                                         s - 1e-3 + 2 * eps, eps);
  CHECK_FALSE(below.verdict);
  auto above = check_hypothesis_internal(pa(1, 0.5), pb(1, 0), 1e-6 - 2 * eps,
                                         s + 1e-3 + 2 * eps, eps);
  CHECK(above.margin1 > 0);

  CHECK_THROWS_AS(damped_region_threshold(pa(1, 1), pb(1, 0)), InfeasibleError);
}

TEST_CASE("report serialization") {
  auto r = check_hypothesis_transmission(pa(1, 0.5), pb(0.5, 0));
  r.tag = "twd";
  auto kv = r.to_key_value();
  CHECK(kv.find("config=twd\n") != std::string::npos);
  CHECK(kv.find("N1=") != std::string::npos);
  CHECK(kv.find("verdict=true\n") != std::string::npos);
  auto header = r.csv_header();
  auto row = r.csv_row();
  CHECK(std::count(header.begin(), header.end(), ',') ==
        std::count(row.begin(), row.end(), ','));
}
