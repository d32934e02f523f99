#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "dwave/errors.hpp"
#include "dwave/mesh.hpp"
#include "dwave/operator.hpp"
#include "dwave/simulate.hpp"
#include "dwave/spectral.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dwave;
using doctest::Approx;

namespace {

StateVector random_state(const GeneratorMatrix& g, std::mt19937& rng) {
  std::normal_distribution<double> n01;
  StateVector s{Eigen::VectorXd(g.unknowns()), Eigen::VectorXd(g.unknowns())};
  for (int k = 0; k < g.unknowns(); ++k) {
    s.u[k] = n01(rng);
    s.v[k] = n01(rng);
  }
  return s;
}

double max_sym_eigenvalue(const SparseMatrix& wa) {
  Eigen::MatrixXd d(wa);
  Eigen::MatrixXd sym = 0.5 * (d + d.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace

TEST_CASE("dimensions and node mapping") {
  auto g = assemble_internal(build_graded(32, 2), fixture::wd_internal());
  CHECK(g.unknowns() == 31);
  CHECK(g.dimension() == 62);
  CHECK(g.node_of(0) == 1);
  auto t = assemble_transmission(build_composite(32, 2, 16, 2), fixture::wd_transmission(), 2);
  CHECK(t.unknowns() == 48);
  CHECK(t.boundary_damping());
  CHECK(t.damping().nonZeros() == 1);
}

TEST_CASE("mesh and system must match") {
  CHECK_THROWS_AS(assemble_internal(build_composite(16, 2, 8, 2), fixture::wd_internal()),
                  ConfigurationError);
  CHECK_THROWS_AS(assemble_transmission(build_graded(16, 2), fixture::wd_transmission(), 2),
                  ConfigurationError);
  CHECK_THROWS_AS(assemble_transmission(build_composite(16, 2, 8, 2),
                                        fixture::wd_transmission(), 3),
                  ConfigurationError);
}

TEST_CASE("W A agrees with the dense generator") {
  for (auto g : {assemble_internal(build_graded(40, 2), fixture::sd_internal()),
                 assemble_transmission(build_composite(40, 3, 20, 2),
                                       fixture::sd_transmission(), 2)}) {
    Eigen::MatrixXd w(g.energy_weight());
    Eigen::MatrixXd wa(g.weighted_generator());
    Eigen::MatrixXd a = g.dense_generator();
    CHECK((w * a - wa).norm() <= 1e-9 * wa.norm());
  }
}

TEST_CASE("undamped generator is skew in the energy coordinates") {
  auto g = assemble_internal(build_graded(64, 2), fixture::wd_internal(false));
  Eigen::MatrixXd aw = g.energy_similar_generator();
  CHECK((aw + aw.transpose()).norm() <= 1e-12 * aw.norm());
  auto t = assemble_transmission(build_composite(64, 2, 32, 2), fixture::wd_transmission(), 2,
                                 false);
  Eigen::MatrixXd at = t.energy_similar_generator();
  CHECK((at + at.transpose()).norm() <= 1e-12 * at.norm());
}

TEST_CASE("dissipativity on random states") {
  std::mt19937 rng(7);
  auto g = assemble_internal(build_graded(64, 2), fixture::wd_internal());
  auto t = assemble_transmission(build_composite(64, 2, 32, 2), fixture::wd_transmission(), 2);
  for (const auto* m : {&g, &t}) {
    const SparseMatrix wa = m->weighted_generator();
    int bad = 0;
    for (int k = 0; k < 100; ++k) {
      auto s = random_state(*m, rng);
      Eigen::VectorXd x = s.stacked();
      double q = x.dot(wa * x);
      if (q > 1e-12 * x.squaredNorm()) ++bad;
      CHECK(q == Approx(-dissipation(*m, s)).epsilon(1e-10));
    }
    CHECK(bad == 0);
    CHECK(max_sym_eigenvalue(wa) <= 1e-10 * Eigen::MatrixXd(wa).norm());
  }
}

TEST_CASE("boundary dissipation is the squared end velocity") {
  std::mt19937 rng(11);
  auto t = assemble_transmission(build_composite(48, 2, 24, 2), fixture::sd_transmission(), 2);
  for (int k = 0; k < 20; ++k) {
    auto s = random_state(t, rng);
    double vl = s.v[t.unknowns() - 1];
    CHECK(dissipation(t, s) == Approx(vl * vl).epsilon(1e-14));
  }
  auto off = assemble_transmission(build_composite(48, 2, 24, 2), fixture::sd_transmission(), 2,
                                   false);
  CHECK(off.damping().nonZeros() == 0);
}

TEST_CASE("unit velocity spike energy") {
  // E = 1/2 M_ii = 1/2 sum over the two adjacent cells of h_j rho_j / 4,
  // rho = eta / a at the cell midpoint.
  auto mesh = build_graded(50, 2);
  auto g = assemble_internal(mesh, fixture::wd_internal());
  for (int i : {1, 10, 25, 49}) {
    StateVector s{Eigen::VectorXd::Zero(g.unknowns()), Eigen::VectorXd::Zero(g.unknowns())};
    s.v[i - 1] = 1.0;
    double expect = 0.0;
    for (int j : {i - 1, i}) {
      double h = mesh.nodes[j + 1] - mesh.nodes[j];
      double xm = 0.5 * (mesh.nodes[j] + mesh.nodes[j + 1]);
      expect += h * oracle::eta_sqrt_const(1.0, xm) / std::sqrt(xm) / 4.0;
    }
    CHECK(discrete_energy(g, s) == Approx(0.5 * expect).epsilon(1e-9));
  }
}

TEST_CASE("uniform string eigenvalues") {
  // Closed form for this stiffness/mass pair: omega_k = (2/h) tan(k pi h / 2).
  auto first = [](int n) {
    auto g = assemble_internal(build_graded(n, 1), fixture::uniform());
    auto eigs = spectrum(g);
    std::vector<double> om;
    for (auto e : eigs)
      if (e.imag() > 0) om.push_back(e.imag());
    std::sort(om.begin(), om.end());
    const double h = 1.0 / n;
    for (int k = 1; k <= 5; ++k)
      CHECK(om[k - 1] == Approx(2 / h * std::tan(k * M_PI * h / 2)).epsilon(1e-9));
    for (auto e : eigs) CHECK(std::abs(e.real()) <= 1e-9 * std::abs(e));
    return om[0];
  };
  double e64 = std::abs(first(64) - M_PI);
  double e128 = std::abs(first(128) - M_PI);
  double e256 = std::abs(first(256) - M_PI);
  CHECK(std::log2(e64 / e128) >= 1.8);
  CHECK(std::log2(e128 / e256) >= 1.8);
}

TEST_CASE("right-moving pulse leaves through the absorbing end") {
  auto mesh = build_composite(512, 2, 512, 2.0);
  auto g = assemble_transmission(mesh, fixture::wd_transmission(), 2.0);
  const double c = 1.5, w = 0.04;
  StateVector s{Eigen::VectorXd(g.unknowns()), Eigen::VectorXd(g.unknowns())};
  for (int k = 0; k < g.unknowns(); ++k) {
    double x = mesh.nodes[g.node_of(k)];
    double p = std::exp(-(x - c) * (x - c) / (2 * w * w));
    s.u[k] = p;
    s.v[k] = (x - c) / (w * w) * p;  // -d/dx of the pulse
  }
  double e0 = discrete_energy(g, s);
  auto tr = run(g, s, 1e-3, 0.9);
  CHECK(tr.energy.back() / e0 < 0.05);
}

TEST_CASE("coordinate export") {
  auto g = assemble_internal(build_graded(16, 2), fixture::wd_internal());
  auto text = g.export_coordinates();
  CHECK(text.rfind("row,col,value\n", 0) == 0);
  Eigen::MatrixXd a = g.dense_generator();
  long nnz = (a.array() != 0.0).count();
  CHECK(std::count(text.begin(), text.end(), '\n') == nnz + 1);
}
