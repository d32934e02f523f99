#include "dwave/simulate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <numbers>
#include <sstream>

#include "dwave/errors.hpp"
#include "dwave/io.hpp"

namespace dwave {

std::string EnergyTrace::to_csv() const {
  std::ostringstream o;
  o << "t,E,D,residual\n";
  for (std::size_t k = 0; k < times.size(); ++k)
    o << format_real(times[k]) << ',' << format_real(energy[k]) << ','
      << format_real(dissipation[k]) << ',' << format_real(identity_residual[k])
      << '\n';
  return o.str();
}

double EnergyTrace::max_residual() const {
  double m = 0.0;
  for (double r : identity_residual) m = std::max(m, r);
  return m;
}

MidpointStepper::MidpointStepper(const GeneratorMatrix& g, double dt)
    : dt_(dt), stiffness_(g.stiffness()) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw ConfigurationError("time step must be positive");
  const SparseMatrix& m = g.mass();
  const SparseMatrix& h = g.damping();
  SparseMatrix lhs = m + (0.5 * dt) * h + (0.25 * dt * dt) * stiffness_;
  rhs_ = m - (0.5 * dt) * h - (0.25 * dt * dt) * stiffness_;
  solver_ = std::make_shared<Eigen::SimplicialLDLT<SparseMatrix>>(lhs);
  if (solver_->info() != Eigen::Success)
    throw NumericalError("implicit midpoint matrix could not be factorized");
}

StateVector MidpointStepper::step(const StateVector& s) const {
  if (s.u.size() != stiffness_.rows() || s.v.size() != stiffness_.rows())
    throw ContractError("state dimension does not match the stepper");
  Eigen::VectorXd r = rhs_ * s.v - dt_ * (stiffness_ * s.u);
  StateVector out;
  out.v = solver_->solve(r);
  if (solver_->info() != Eigen::Success || !out.v.allFinite())
    throw NumericalError("implicit midpoint solve failed");
  out.u = s.u + (0.5 * dt_) * (s.v + out.v);
  return out;
}

StateVector step_midpoint(const GeneratorMatrix& g, const StateVector& s, double dt) {
  return MidpointStepper(g, dt).step(s);
}

EnergyTrace run(const GeneratorMatrix& g, const StateVector& s0, double dt,
                double t_end, const SnapshotSink& snapshots, StateVector* final_state) {
  if (!(t_end > 0.0)) throw ConfigurationError("t_end must be positive");
  if (!(dt > 0.0)) throw ConfigurationError("time step must be positive");
  const long steps = std::max(1L, std::lround(t_end / dt));
  const double h = t_end / static_cast<double>(steps);
  MidpointStepper stepper(g, h);

  if (snapshots.every > 0) ensure_directory(snapshots.directory);
  auto snap = [&](long k, const StateVector& s) {
    if (snapshots.every <= 0 || k % snapshots.every != 0) return;
    char name[64];
    std::snprintf(name, sizeof name, "snapshot_%07ld.csv", k);
    write_text_file((std::filesystem::path(snapshots.directory) / name).string(),
                    state_to_csv(g, s));
  };

  EnergyTrace tr;
  tr.times.reserve(steps + 1);
  tr.energy.reserve(steps + 1);
  tr.dissipation.reserve(steps + 1);
  tr.identity_residual.reserve(steps + 1);
  StateVector s = s0;
  tr.times.push_back(0.0);
  tr.energy.push_back(discrete_energy(g, s));
  tr.dissipation.push_back(dissipation(g, s));
  tr.identity_residual.push_back(0.0);
  snap(0, s);
  for (long k = 1; k <= steps; ++k) {
    s = stepper.step(s);
    double e = discrete_energy(g, s);
    double d = dissipation(g, s);
    tr.times.push_back(k == steps ? t_end : k * h);
    tr.identity_residual.push_back(
        std::abs((e - tr.energy.back()) / h + 0.5 * (d + tr.dissipation.back())));
    tr.energy.push_back(e);
    tr.dissipation.push_back(d);
    snap(k, s);
  }
  if (final_state) *final_state = s;
  return tr;
}

// ---------------------------------------------------------------------------
// Initial data

namespace {

void normalise(Eigen::VectorXd& u) {
  Eigen::Index imax = 0;
  double m = u.cwiseAbs().maxCoeff(&imax);
  if (m > 0.0) u *= (u[imax] > 0 ? 1.0 : -1.0) / m;
}

}  // namespace

StateVector initial_condition(const GeneratorMatrix& g, const InitialKind& kind) {
  const int n = g.unknowns();
  const auto& x = g.mesh().nodes;
  const double right = g.mesh().domain_right;
  StateVector s{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  if (std::holds_alternative<ZeroData>(kind)) return s;
  if (auto* sm = std::get_if<SineMode>(&kind)) {
    if (sm->k < 1) throw ConfigurationError("sine mode index must be >= 1");
    for (int i = 0; i < n; ++i)
      s.u[i] = std::sin(sm->k * std::numbers::pi * x[g.node_of(i)] / right);
    return s;
  }
  if (auto* gp = std::get_if<GaussianPulse>(&kind)) {
    if (!(gp->width > 0.0)) throw ConfigurationError("pulse width must be > 0");
    if (!(gp->center > 0.0 && gp->center < right))
      throw ConfigurationError("pulse centre must lie inside the domain");
    for (int i = 0; i < n; ++i) {
      double d = (x[g.node_of(i)] - gp->center) / gp->width;
      s.u[i] = std::exp(-0.5 * d * d);
    }
    return s;
  }
  if (auto* dm = std::get_if<DiscreteMode>(&kind)) {
    if (dm->k < 1 || dm->k > n) throw ConfigurationError("mode index out of range");
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
        Eigen::MatrixXd(g.stiffness()), Eigen::MatrixXd(g.mass()));
    if (es.info() != Eigen::Success) throw NumericalError("mode computation failed");
    s.u = es.eigenvectors().col(dm->k - 1);
    normalise(s.u);
    return s;
  }
  return state_from_csv(g, std::get<CustomData>(kind).path);
}

std::string state_to_csv(const GeneratorMatrix& g, const StateVector& s) {
  const auto& x = g.mesh().nodes;
  const bool trans = g.system() == SystemKind::Transmission;
  const std::size_t iface = g.mesh().left_end();
  const std::string nan = "nan";
  auto val = [&](const Eigen::VectorXd& w, std::size_t node) {
    // Dirichlet nodes hold zero
    if (node == 0 || (!trans && node + 1 == x.size())) return 0.0;
    return w[static_cast<Eigen::Index>(node) - 1];
  };
  std::ostringstream o;
  o << (trans ? "x,u,v,y,z\n" : "x,u,v\n");
  for (std::size_t i = 0; i < x.size(); ++i) {
    o << format_real(x[i]);
    if (!trans || i <= iface)
      o << ',' << format_real(val(s.u, i)) << ',' << format_real(val(s.v, i));
    else
      o << ',' << nan << ',' << nan;
    if (trans) {
      if (i >= iface)
        o << ',' << format_real(val(s.u, i)) << ',' << format_real(val(s.v, i));
      else
        o << ',' << nan << ',' << nan;
    }
    o << '\n';
  }
  return o.str();
}

StateVector state_from_csv(const GeneratorMatrix& g, const std::string& path) {
  auto rows = read_numeric_csv(path);
  const auto& x = g.mesh().nodes;
  if (rows.size() != x.size())
    throw InputError(path + ": expected " + std::to_string(x.size()) + " rows, got " +
                     std::to_string(rows.size()));
  const int n = g.unknowns();
  const std::size_t iface = g.mesh().left_end();
  StateVector s{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() < 2 || r.size() == 4 || r.size() > 5)
      throw InputError(path + ": expected columns x,u[,v] or x,u,v,y,z");
    if (std::abs(r[0] - x[i]) > 1e-12 * std::max(1.0, std::abs(x[i])))
      throw InputError(path + ": node " + std::to_string(i) + " does not match the mesh");
    if (i == 0) continue;
    if (i > static_cast<std::size_t>(n)) continue;  // right Dirichlet node
    double u = r[1], v = r.size() >= 3 ? r[2] : 0.0;
    if (r.size() == 5 && i > iface) {
      u = r[3];
      v = r[4];
    }
    if (!std::isfinite(u) || !std::isfinite(v))
      throw InputError(path + ": non-finite value at node " + std::to_string(i));
    s.u[static_cast<Eigen::Index>(i) - 1] = u;
    s.v[static_cast<Eigen::Index>(i) - 1] = v;
  }
  return s;
}

}  // namespace dwave
