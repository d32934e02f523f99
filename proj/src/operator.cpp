#include "dwave/operator.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "dwave/errors.hpp"
#include "dwave/io.hpp"

namespace dwave {

Eigen::VectorXd StateVector::stacked() const {
  Eigen::VectorXd s(u.size() + v.size());
  s << u, v;
  return s;
}

StateVector StateVector::from_stacked(const Eigen::VectorXd& s) {
  if (s.size() % 2 != 0) throw ContractError("stacked state has odd length");
  const auto n = s.size() / 2;
  return {s.head(n), s.tail(n)};
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Per-cell data of the assembled forms: stiffness weight kappa (eta at the
// midpoint, 1 on the classical part) and velocity weight rho (1/sigma).
struct CellWeights {
  std::vector<double> kappa;
  std::vector<double> rho;
};

struct LeftWeights {
  CellWeights cells;
  std::vector<double> eta_nodes;
  std::vector<double> inv_sigma_nodes;
};

// Eta and 1/sigma on nodes 0..last and the cell midpoints in between.
LeftWeights left_weights(const Mesh& mesh, std::size_t last,
                         const CoefficientSet& c) {
  WeightEvaluator w(c.a, c.b);
  std::vector<double> pts;
  pts.reserve(2 * last + 1);
  for (std::size_t i = 0; i <= last; ++i) {
    pts.push_back(mesh.nodes[i]);
    if (i < last) pts.push_back(0.5 * (mesh.nodes[i] + mesh.nodes[i + 1]));
  }
  auto eta = w.eta(pts);
  LeftWeights out;
  for (std::size_t i = 0; i <= last; ++i) {
    double e = eta[2 * i];
    double a = c.a(mesh.nodes[i]);
    out.eta_nodes.push_back(e);
    out.inv_sigma_nodes.push_back(a > 0.0 ? e / a
                                          : std::numeric_limits<double>::infinity());
    if (i < last) {
      double xm = pts[2 * i + 1];
      double am = c.a(xm);
      double em = eta[2 * i + 1];
      if (!(am > 0.0) || !(em > 0.0) || !std::isfinite(em / am))
        throw InvalidCoefficientError("sigma not positive at x = " + format_real(xm));
      out.cells.kappa.push_back(em);
      out.cells.rho.push_back(em / am);
    }
  }
  return out;
}

// Adds the stiffness and mass contributions of one cell between nodes j and
// j+1. Unknown k corresponds to node k+1; node 0 is always Dirichlet, and
// `last_unknown_node` bounds the unknown range (the right Dirichlet node of
// the internal system is excluded this way).
void add_cell(Triplets& s, Triplets& m, std::size_t j, double h, double kappa,
              double rho, std::size_t last_unknown_node) {
  const double ks = kappa / h;
  const double ms = h * rho / 4.0;
  auto idx = [&](std::size_t node) -> long {
    if (node == 0 || node > last_unknown_node) return -1;
    return static_cast<long>(node) - 1;
  };
  const long p = idx(j), q = idx(j + 1);
  if (p >= 0) {
    s.emplace_back(p, p, ks);
    m.emplace_back(p, p, ms);
  }
  if (q >= 0) {
    s.emplace_back(q, q, ks);
    m.emplace_back(q, q, ms);
  }
  if (p >= 0 && q >= 0) {
    s.emplace_back(p, q, -ks);
    s.emplace_back(q, p, -ks);
    m.emplace_back(p, q, ms);
    m.emplace_back(q, p, ms);
  }
}

SparseMatrix from_triplets(int n, const Triplets& t) {
  SparseMatrix a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  a.makeCompressed();
  return a;
}

Eigen::MatrixXd lower_cholesky(const SparseMatrix& a, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt{Eigen::MatrixXd(a)};
  if (llt.info() != Eigen::Success)
    throw NumericalError(std::string(what) + " is not positive definite");
  return llt.matrixL();
}

}  // namespace

GeneratorMatrix assemble_internal(const Mesh& mesh, const CoefficientSet& c) {
  if (mesh.interface_index)
    throw ConfigurationError("internal system needs a simple mesh on [0, 1]");
  if (mesh.nodes.back() != 1.0 || mesh.nodes.front() != 0.0)
    throw ConfigurationError("mesh must span [0, 1]");
  if (c.damping) c.damping->validate();
  const std::size_t N = mesh.size() - 1;
  const int n = static_cast<int>(N) - 1;
  auto lw = left_weights(mesh, N, c);

  Triplets s, m, h;
  for (std::size_t j = 0; j < N; ++j)
    add_cell(s, m, j, mesh.nodes[j + 1] - mesh.nodes[j], lw.cells.kappa[j],
             lw.cells.rho[j], N - 1);
  if (c.damping) {
    for (std::size_t i = 1; i < N; ++i) {
      double hv = (*c.damping)(mesh.nodes[i]);
      if (hv == 0.0) continue;
      double wi = 0.5 * (mesh.nodes[i + 1] - mesh.nodes[i - 1]);
      h.emplace_back(i - 1, i - 1, wi * hv * lw.inv_sigma_nodes[i]);
    }
  }

  GeneratorMatrix g;
  g.system_ = SystemKind::InternalDamping;
  g.mesh_ = mesh;
  g.stiffness_ = from_triplets(n, s);
  g.mass_ = from_triplets(n, m);
  g.damping_ = from_triplets(n, h);
  g.eta_nodes_ = Eigen::Map<Eigen::VectorXd>(lw.eta_nodes.data(), lw.eta_nodes.size());
  g.inv_sigma_nodes_ =
      Eigen::Map<Eigen::VectorXd>(lw.inv_sigma_nodes.data(), lw.inv_sigma_nodes.size());
  return g;
}

GeneratorMatrix assemble_transmission(const Mesh& mesh, const CoefficientSet& c,
                                      double L, bool boundary_damping) {
  if (!mesh.interface_index)
    throw ConfigurationError("transmission system needs an interface node at 1");
  const std::size_t I = *mesh.interface_index;
  if (mesh.nodes[I] != 1.0) throw ConfigurationError("interface node is not at 1");
  if (std::abs(mesh.domain_right - L) > 1e-14 || mesh.nodes.back() != mesh.domain_right)
    throw ConfigurationError("mesh does not end at L");
  const std::size_t N = mesh.size() - 1;
  const int n = static_cast<int>(N);  // nodes 1..N are unknowns
  auto lw = left_weights(mesh, I, c);

  Triplets s, m, h;
  for (std::size_t j = 0; j < N; ++j) {
    double hj = mesh.nodes[j + 1] - mesh.nodes[j];
    if (j < I)
      add_cell(s, m, j, hj, lw.cells.kappa[j], lw.cells.rho[j], N);
    else
      add_cell(s, m, j, hj, 1.0, 1.0, N);
  }
  if (boundary_damping) h.emplace_back(n - 1, n - 1, 1.0);

  GeneratorMatrix g;
  g.system_ = SystemKind::Transmission;
  g.mesh_ = mesh;
  g.boundary_damping_ = boundary_damping;
  g.stiffness_ = from_triplets(n, s);
  g.mass_ = from_triplets(n, m);
  g.damping_ = from_triplets(n, h);
  g.eta_nodes_.resize(static_cast<long>(mesh.size()));
  g.inv_sigma_nodes_.resize(static_cast<long>(mesh.size()));
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    g.eta_nodes_[i] = i <= I ? lw.eta_nodes[i] : 1.0;
    g.inv_sigma_nodes_[i] = i <= I ? lw.inv_sigma_nodes[i] : 1.0;
  }
  return g;
}

SparseMatrix GeneratorMatrix::energy_weight() const {
  const int n = unknowns();
  Triplets t;
  for (int k = 0; k < stiffness_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(stiffness_, k); it; ++it)
      t.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < mass_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(mass_, k); it; ++it)
      t.emplace_back(n + it.row(), n + it.col(), it.value());
  return from_triplets(2 * n, t);
}

SparseMatrix GeneratorMatrix::weighted_generator() const {
  const int n = unknowns();
  Triplets t;
  for (int k = 0; k < stiffness_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(stiffness_, k); it; ++it) {
      t.emplace_back(it.row(), n + it.col(), it.value());
      t.emplace_back(n + it.row(), it.col(), -it.value());
    }
  for (int k = 0; k < damping_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(damping_, k); it; ++it)
      t.emplace_back(n + it.row(), n + it.col(), -it.value());
  return from_triplets(2 * n, t);
}

Eigen::MatrixXd GeneratorMatrix::dense_generator() const {
  const int n = unknowns();
  Eigen::LDLT<Eigen::MatrixXd> mass{Eigen::MatrixXd(mass_)};
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  a.topRightCorner(n, n).setIdentity();
  a.bottomLeftCorner(n, n) = -mass.solve(Eigen::MatrixXd(stiffness_));
  a.bottomRightCorner(n, n) = -mass.solve(Eigen::MatrixXd(damping_));
  return a;
}

Eigen::MatrixXd GeneratorMatrix::energy_similar_generator() const {
  const int n = unknowns();
  const Eigen::MatrixXd ls = lower_cholesky(stiffness_, "stiffness");
  const Eigen::MatrixXd lm = lower_cholesky(mass_, "mass");
  auto lm_view = lm.triangularView<Eigen::Lower>();
  Eigen::MatrixXd c = lm_view.solve(ls);
  Eigen::MatrixXd x = lm_view.solve(Eigen::MatrixXd(damping_));
  Eigen::MatrixXd gd = lm_view.solve(x.transpose());
  gd = 0.5 * (gd + gd.transpose()).eval();
  Eigen::MatrixXd a(2 * n, 2 * n);
  a.topLeftCorner(n, n).setZero();
  a.topRightCorner(n, n) = c.transpose();
  a.bottomLeftCorner(n, n) = -c;
  a.bottomRightCorner(n, n) = -gd;
  return a;
}

std::string GeneratorMatrix::export_coordinates() const {
  const Eigen::MatrixXd a = dense_generator();
  std::ostringstream o;
  o << "row,col,value\n";
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0.0) o << i << ',' << j << ',' << format_real(a(i, j)) << '\n';
  return o.str();
}

namespace {

void check_dims(const GeneratorMatrix& g, const StateVector& s) {
  if (s.u.size() != g.unknowns() || s.v.size() != g.unknowns())
    throw ContractError("state dimension " + std::to_string(s.dimension()) +
                        " does not match generator dimension " +
                        std::to_string(g.dimension()));
}

}  // namespace

double discrete_energy(const GeneratorMatrix& g, const StateVector& s) {
  check_dims(g, s);
  return 0.5 * (s.u.dot(g.stiffness() * s.u) + s.v.dot(g.mass() * s.v));
}

double dissipation(const GeneratorMatrix& g, const StateVector& s) {
  check_dims(g, s);
  return s.v.dot(g.damping() * s.v);
}

}  // namespace dwave
