#pragma once

#include <Eigen/SparseCholesky>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dwave/operator.hpp"

namespace dwave {

struct EnergyTrace {
  std::vector<double> times;
  std::vector<double> energy;
  std::vector<double> dissipation;
  /// |(E_{k} - E_{k-1})/dt + (D_{k-1} + D_{k})/2|; entry 0 is 0.
  std::vector<double> identity_residual;

  std::size_t size() const { return times.size(); }
  /// Header t,E,D,residual.
  std::string to_csv() const;
  double max_residual() const;
};

/// Implicit-midpoint stepper with the factorization built once per (g, dt).
/// The step is solved in reduced form:
///   (M + dt/2 H + dt^2/4 S) v+ = (M - dt/2 H - dt^2/4 S) v - dt S u,
///   u+ = u + dt/2 (v + v+),
/// which is algebraically (I - dt/2 A)^{-1} (I + dt/2 A).
class MidpointStepper {
 public:
  MidpointStepper(const GeneratorMatrix& g, double dt);
  StateVector step(const StateVector& s) const;
  double dt() const { return dt_; }

 private:
  double dt_;
  SparseMatrix stiffness_;
  SparseMatrix rhs_;
  std::shared_ptr<Eigen::SimplicialLDLT<SparseMatrix>> solver_;
};

/// One step; builds a fresh factorization (use MidpointStepper for loops).
StateVector step_midpoint(const GeneratorMatrix& g, const StateVector& s, double dt);

struct SnapshotSink {
  int every = 0;          // 0 disables
  std::string directory;  // files snapshot_<step>.csv
};

/// Steps from 0 to t_end (number of steps round(t_end/dt), dt adjusted so the
/// last step lands on t_end). Records every step; the state at t_end is
/// stored in *final_state when given.
EnergyTrace run(const GeneratorMatrix& g, const StateVector& s0, double dt,
                double t_end, const SnapshotSink& snapshots = {},
                StateVector* final_state = nullptr);

/// Default step t_end / 5000.
inline double default_dt(double t_end) { return t_end / 5000.0; }

// ---------------------------------------------------------------------------
// Initial data

struct ZeroData {
  bool operator==(const ZeroData&) const = default;
};
struct SineMode {
  int k = 1;
  bool operator==(const SineMode&) const = default;
};
struct GaussianPulse {
  double center = 0.5;
  double width = 0.05;
  bool operator==(const GaussianPulse&) const = default;
};
/// k-th eigenvector of the undamped problem S phi = omega^2 M phi.
struct DiscreteMode {
  int k = 1;
  bool operator==(const DiscreteMode&) const = default;
};
struct CustomData {
  std::string path;
  bool operator==(const CustomData&) const = default;
};

using InitialKind = std::variant<ZeroData, SineMode, GaussianPulse, DiscreteMode, CustomData>;

/// Displacement from the chosen kind, v = 0 (Custom may supply v).
/// SineMode is sin(k pi x) on [0, 1] and sin(k pi x / L) on a composite
/// mesh; GaussianPulse is exp(-(x-c)^2 / (2 w^2)); modes are scaled to
/// max |u| = 1 with a positive largest entry. Dirichlet values are zero by
/// construction. Throws InputError on unreadable custom files.
StateVector initial_condition(const GeneratorMatrix& g, const InitialKind& kind);

/// Nodal CSV of a state: internal "x,u,v"; transmission "x,u,v,y,z" with u,v
/// on [0, 1] and y,z on [1, L] ("nan" elsewhere; the interface row carries
/// both).
std::string state_to_csv(const GeneratorMatrix& g, const StateVector& s);

/// Reads a CSV with columns x,u[,v] (or x,u,v,y,z) over all mesh nodes.
StateVector state_from_csv(const GeneratorMatrix& g, const std::string& path);

}  // namespace dwave
