#pragma once

// Config-driven composition of the modules; each stage writes its files
// into an output directory and returns the computed values.

#include <complex>
#include <string>
#include <vector>

#include "dwave/config.hpp"
#include "dwave/decay.hpp"
#include "dwave/mesh.hpp"
#include "dwave/operator.hpp"
#include "dwave/simulate.hpp"
#include "dwave/spectral.hpp"

namespace dwave {

CoefficientSet coefficient_set(const ExperimentConfig& cfg);
Mesh build_mesh(const ExperimentConfig& cfg);
GeneratorMatrix build_generator(const ExperimentConfig& cfg);

/// Hypothesis check for the configured system, tagged with cfg.id.
HypothesisReport run_check(const ExperimentConfig& cfg);

struct SimulationResult {
  EnergyTrace trace;
  StateVector final_state;
};

/// Snapshots go to <snapshot_dir> when cfg.snapshot_every > 0.
SimulationResult run_simulation(const ExperimentConfig& cfg, const GeneratorMatrix& g,
                                const std::string& snapshot_dir = {});

/// Resolvent scan over logspace(lambda_min, lambda_max, points), tagged.
ResolventScan run_scan(const ExperimentConfig& cfg, const GeneratorMatrix& g,
                       int threads = 0);

struct FullResult {
  HypothesisReport hypothesis;
  EnergyTrace trace;
  DecayFit fit;
  std::vector<std::complex<double>> eigenvalues;
  double abscissa = 0.0;
  ResolventScan scan;
  VerdictReport verdict;
};

FullResult run_full(const ExperimentConfig& cfg, int threads = 0);

// File-writing stages. `dir` is created when missing.
HypothesisReport write_check(const ExperimentConfig& cfg, const std::string& dir);
SimulationResult write_simulation(const ExperimentConfig& cfg, const std::string& dir);
std::vector<std::complex<double>> write_spectrum(const ExperimentConfig& cfg,
                                                 const std::string& dir);
ResolventScan write_resolvent(const ExperimentConfig& cfg, const std::string& dir,
                              int threads = 0);
FullResult write_verdict(const ExperimentConfig& cfg, const std::string& dir,
                         int threads = 0);

/// The four bundled example configurations, in summary order.
std::vector<std::string> demo_config_names();

struct DemoResult {
  std::vector<FullResult> runs;
  std::string summary_csv;
  std::string summary_text;
  bool all_stable() const;
};

/// Runs every bundled example from `config_dir` into <out>/<id>/ and writes
/// summary.csv, summary.txt and gnuplot scripts into `out`.
DemoResult run_demo(const std::string& config_dir, const std::string& out, int threads = 0);

}  // namespace dwave
