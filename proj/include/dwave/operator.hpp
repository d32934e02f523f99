#pragma once

// Discrete generator of U_t = A U for the damped degenerate string (internal
// damping) and for the degenerate/classical transmission problem.
//
// Unknowns are nodal displacements u and velocities v at every node that is
// not a Dirichlet node. The semi-discrete system is
//
//     u' = v,    M v' = -S u - H v,
//
// with S the flux-form stiffness (eta at cell midpoints), M the velocity mass
// with weight 1/sigma (cell midpoint value, consistent midpoint-averaged
// form) and H the nodal damping. The energy weight is W = diag(S, M), so that
// W A = [[0, S], [-S, -H]].

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <optional>
#include <string>

#include "dwave/coefficients.hpp"
#include "dwave/mesh.hpp"

namespace dwave {

struct CoefficientSet {
  CoefficientProfile a;
  CoefficientProfile b;
  std::optional<DampingProfile> damping;  // internal damping h; none -> h = 0
  double epsilon = 0.0;                   // only used by the hypothesis check
};

using SparseMatrix = Eigen::SparseMatrix<double>;

struct StateVector {
  Eigen::VectorXd u;
  Eigen::VectorXd v;

  std::size_t dimension() const { return static_cast<std::size_t>(u.size() + v.size()); }
  Eigen::VectorXd stacked() const;
  static StateVector from_stacked(const Eigen::VectorXd& s);
};

class GeneratorMatrix {
 public:
  SystemKind system() const { return system_; }
  const Mesh& mesh() const { return mesh_; }
  /// Number of displacement unknowns; the state has twice as many entries.
  int unknowns() const { return static_cast<int>(stiffness_.rows()); }
  int dimension() const { return 2 * unknowns(); }
  /// Mesh node index of displacement unknown k.
  std::size_t node_of(int k) const { return static_cast<std::size_t>(k) + 1; }
  bool boundary_damping() const { return boundary_damping_; }

  const SparseMatrix& stiffness() const { return stiffness_; }
  const SparseMatrix& mass() const { return mass_; }
  const SparseMatrix& damping() const { return damping_; }

  /// W = diag(S, M).
  SparseMatrix energy_weight() const;
  /// W A = [[0, S], [-S, -H]].
  SparseMatrix weighted_generator() const;
  /// A itself (dense; A = W^{-1} (W A)).
  Eigen::MatrixXd dense_generator() const;
  /// R A R^{-1} with W = R^T R, R = diag(L_S^T, L_M^T): the generator in
  /// coordinates where the energy inner product is the Euclidean one.
  Eigen::MatrixXd energy_similar_generator() const;

  /// Coordinate text "row col value" (0-based) of the nonzeros of A.
  std::string export_coordinates() const;

  /// Eta at the mesh nodes (1 on the classical part).
  const Eigen::VectorXd& eta_nodes() const { return eta_nodes_; }
  /// 1/sigma at the mesh nodes (1 on the classical part, +inf at x = 0).
  const Eigen::VectorXd& inv_sigma_nodes() const { return inv_sigma_nodes_; }

 private:
  friend GeneratorMatrix assemble_internal(const Mesh&, const CoefficientSet&);
  friend GeneratorMatrix assemble_transmission(const Mesh&, const CoefficientSet&,
                                               double, bool);

  SystemKind system_ = SystemKind::InternalDamping;
  Mesh mesh_;
  bool boundary_damping_ = false;
  SparseMatrix stiffness_;
  SparseMatrix mass_;
  SparseMatrix damping_;
  Eigen::VectorXd eta_nodes_;
  Eigen::VectorXd inv_sigma_nodes_;
};

/// Dirichlet at x = 0 and x = 1; internal damping from coeffs.damping.
/// Throws InvalidCoefficientError if sigma <= 0 at a quadrature point.
GeneratorMatrix assemble_internal(const Mesh& mesh, const CoefficientSet& coeffs);

/// Composite mesh with interface node at 1; Dirichlet at 0, absorbing end
/// y_x(L) = -y_t(L) when boundary_damping is set (otherwise y_x(L) = 0).
/// coeffs.damping is ignored. Throws ConfigurationError without an interface.
GeneratorMatrix assemble_transmission(const Mesh& mesh, const CoefficientSet& coeffs,
                                      double L, bool boundary_damping = true);

/// E = 1/2 s^T W s. Throws ContractError on dimension mismatch.
double discrete_energy(const GeneratorMatrix& g, const StateVector& s);

/// D = v^T H v: the trapezoid value of int (h/sigma) v^2, or z(L)^2.
double dissipation(const GeneratorMatrix& g, const StateVector& s);

}  // namespace dwave
