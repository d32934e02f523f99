#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "dwave/errors.hpp"
#include "dwave/mesh.hpp"
#include "dwave/spectral.hpp"
#include "fixtures.hpp"

using namespace dwave;
using doctest::Approx;

namespace {

double dist_to_spectrum(double lambda, const std::vector<std::complex<double>>& eigs) {
  double d = std::numeric_limits<double>::infinity();
  for (auto e : eigs) d = std::min(d, std::abs(std::complex<double>(0, lambda) - e));
  return d;
}

}  // namespace

TEST_CASE("spectrum of damped systems lies in the left half plane") {
  auto g = assemble_internal(build_graded(64, 2), fixture::wd_internal());
  auto eigs = spectrum(g);
  CHECK(eigs.size() == static_cast<std::size_t>(g.dimension()));
  CHECK(spectral_abscissa(eigs) < 0.0);
  for (std::size_t i = 1; i < eigs.size(); ++i) CHECK(eigs[i - 1].imag() <= eigs[i].imag());
  // real operator: the spectrum is closed under conjugation
  for (auto e : eigs) CHECK(dist_to_spectrum(-e.imag(), eigs) <= std::abs(e.real()) + 1e-8 * std::abs(e));
  auto csv = spectrum_csv(eigs);
  CHECK(csv.rfind("re,im\n", 0) == 0);
  CHECK_THROWS_AS(spectral_abscissa({}), ContractError);
}

TEST_CASE("resolvent symmetry and distance bound") {
  auto g = assemble_transmission(build_composite(64, 3, 32, 2), fixture::sd_transmission(), 2);
  auto eigs = spectrum(g);
  ResolventEvaluator ev(g);
  for (double l : logspace(0.1, 100, 25)) {
    double r = ev.norm(l);
    CHECK(ev.norm(-l) == Approx(r).epsilon(1e-10));
    CHECK(r >= (1 - 1e-10) / dist_to_spectrum(l, eigs));
  }
  CHECK(resolvent_norm(g, 2.0) == Approx(ev.norm(2.0)).epsilon(1e-12));
}

TEST_CASE("resolvent of a skew generator is the inverse distance") {
  // normal operator: ||(i lambda - A)^{-1}|| = 1 / dist exactly
  auto g = assemble_internal(build_graded(48, 1), fixture::uniform());
  auto eigs = spectrum(g);
  ResolventEvaluator ev(g);
  for (double l : {0.5, 2.0, 7.0, 40.0})
    CHECK(ev.norm(l) == Approx(1.0 / dist_to_spectrum(l, eigs)).epsilon(1e-8));
  // on an eigenfrequency the shift is singular
  double w = 0;
  for (auto e : eigs)
    if (e.imag() > 0) {
      w = e.imag();
      break;
    }
  CHECK(ev.norm(w) >= 1e12);
}

TEST_CASE("scan bookkeeping") {
  auto g = assemble_internal(build_graded(32, 2), fixture::wd_internal());
  auto grid = logspace(0.1, 100, 9);
  CHECK(grid.front() == 0.1);
  CHECK(grid.back() == 100.0);
  CHECK(grid[4] == Approx(std::sqrt(10.0)).epsilon(1e-14));
  auto s1 = scan(g, grid, 1);
  auto s3 = scan(g, grid, 3);
  CHECK(s1.norms == s3.norms);  // same values in grid order
  CHECK(s1.finite());
  double sup = 0, kappa = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sup = std::max(sup, s1.norms[i]);
    kappa = std::max(kappa, s1.norms[i] * grid[i] * grid[i] / (1 + grid[i] * grid[i]));
  }
  CHECK(s1.sup_norm == sup);
  CHECK(s1.bound_kappa == Approx(kappa));
  auto one = scan(g, {1.0});
  auto csv = one.to_csv();
  CHECK(csv.rfind("lambda,resolvent_norm\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK_THROWS_AS(scan(g, {}), ContractError);
  CHECK_THROWS_AS(scan(g, {2.0, 1.0}), ContractError);
}

TEST_CASE("dense routines refuse oversized generators") {
  auto g = assemble_internal(build_graded(kSpectrumCap / 2 + 2, 1), fixture::uniform());
  CHECK(g.dimension() > kSpectrumCap);
  CHECK_THROWS_AS(spectrum(g), CapacityError);
  CHECK_THROWS_AS(ResolventEvaluator{g}, CapacityError);
}

TEST_CASE("zero is in the resolvent set of the damped examples") {
  auto wd = assemble_internal(build_graded(64, 2), fixture::wd_internal());
  auto tw = assemble_transmission(build_composite(64, 2, 32, 2), fixture::wd_transmission(), 2);
  for (const auto* g : {&wd, &tw}) {
    double r0 = resolvent_norm(*g, 0.0);
    CHECK(std::isfinite(r0));
    CHECK(r0 > 0.0);
  }
}

TEST_CASE("far field is nearly normal") {
  auto g = assemble_internal(build_graded(48, 2), fixture::wd_internal());
  auto eigs = spectrum(g);
  double top = 0;
  for (auto e : eigs) top = std::max(top, std::abs(e.imag()));
  double l = 10 * top;
  double r = resolvent_norm(g, l);
  double inv = 1.0 / dist_to_spectrum(l, eigs);
  MESSAGE("far field: norm " << r << " vs 1/dist " << inv);
  CHECK(r >= inv * (1 - 1e-10));
  CHECK(r <= 1.1 * inv);
}

TEST_CASE("resolvent sup is stable under mesh refinement") {
  auto grid = logspace(0.1, 100, 60);
  auto coarse = scan(assemble_internal(build_graded(128, 2), fixture::wd_internal()), grid);
  auto fine = scan(assemble_internal(build_graded(256, 2), fixture::wd_internal()), grid);
  double change = std::abs(fine.sup_norm - coarse.sup_norm) / coarse.sup_norm;
  MESSAGE("sup n=128: " << coarse.sup_norm << ", n=256: " << fine.sup_norm);
  CHECK(change < 0.25);
}
