#pragma once

// Experiment configuration (TOML). See configs/*.toml for annotated
// examples of both systems.

#include <optional>
#include <string>

#include "dwave/coefficients.hpp"
#include "dwave/simulate.hpp"

namespace dwave {

struct CoefficientSpec {
  enum class Kind { PowerLaw, Table } kind = Kind::PowerLaw;
  double c = 1.0;
  double k = 0.0;
  std::string table;  // as written in the file

  bool operator==(const CoefficientSpec&) const = default;
};

struct DampingSpec {
  bool enabled = true;
  double x1 = 0.0;
  double x2 = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double epsilon = 0.0;

  bool operator==(const DampingSpec&) const = default;
};

struct TransmissionSpec {
  double L = 2.0;
  int n_right = 0;
  bool boundary_damping = true;

  bool operator==(const TransmissionSpec&) const = default;
};

struct ExperimentConfig {
  std::string id;
  SystemKind system = SystemKind::InternalDamping;
  CoefficientSpec a;
  CoefficientSpec b;
  DampingSpec damping;            // internal system
  TransmissionSpec transmission;  // transmission system
  int n = 256;
  double grading = 2.0;
  double t_end = 40.0;
  std::optional<double> dt;  // default t_end / 5000
  double window_fraction = 0.5;
  double lambda_min = 0.1;
  double lambda_max = 100.0;
  int lambda_points = 60;
  InitialKind initial = GaussianPulse{};
  std::string output_dir;
  int snapshot_every = 0;
  /// Directory of the file the config was read from; relative table and
  /// custom-data paths resolve against it. Not serialized.
  std::string base_dir;

  double time_step() const { return dt.value_or(default_dt(t_end)); }
  /// Path resolved against base_dir.
  std::string resolve(const std::string& path) const;

  bool operator==(const ExperimentConfig& o) const;
};

/// Parses and validates. Throws ConfigurationError (InputError for I/O).
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text, const std::string& base_dir = ".",
                              const std::string& default_id = "experiment");
/// TOML text that parses back to an equal config.
std::string dump_config(const ExperimentConfig& cfg);
/// Re-checks every constraint; throws ConfigurationError.
void validate(const ExperimentConfig& cfg);

CoefficientProfile make_profile(const ExperimentConfig& cfg, const CoefficientSpec& spec,
                                CoefficientRole role);

}  // namespace dwave
