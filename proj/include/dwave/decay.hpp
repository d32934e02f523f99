#pragma once

#include <string>
#include <vector>

#include "dwave/coefficients.hpp"
#include "dwave/simulate.hpp"
#include "dwave/spectral.hpp"

namespace dwave {

/// E(t) ~ E(0) m exp(-2 tau t) fitted on log E over the tail window. tau is
/// the state-norm rate; the energy decays at 2 tau.
struct DecayFit {
  double m_factor = 0.0;
  double tau = 0.0;
  double r_squared = 0.0;
  double window_start = 0.0;
  double window_end = 0.0;
  std::size_t samples = 0;
  bool no_decay = false;  // tau not resolvably positive
  std::string tag;

  std::string to_key_value() const;
};

/// Least squares of log E on the last window_fraction of the time span.
/// Throws FitInfeasibleError with fewer than 50 window samples or when the
/// window energy is not above 1e-300; ConfigurationError for a fraction
/// outside (0, 1].
DecayFit fit_decay(const EnergyTrace& trace, double window_fraction = 0.5);

enum class Stability { ExponentiallyStable, NotEstablished };

struct VerdictReport {
  std::string tag;
  Stability verdict = Stability::NotEstablished;
  std::vector<std::string> failed;  // names of the failed pillars
  bool hypothesis = false;
  double tau = 0.0;
  double r_squared = 0.0;
  double abscissa = 0.0;
  double sup_norm = 0.0;
  double bound_kappa = 0.0;
  /// (-2 abscissa) / (2 tau): spectral vs fitted energy decay rate.
  double rate_ratio = 0.0;

  bool stable() const { return verdict == Stability::ExponentiallyStable; }
  std::string to_text() const;
  static std::string csv_header();
  std::string csv_row() const;
};

std::string to_string(Stability s);

/// Abscissae within this of zero count as zero (eigenvalue round-off of a
/// conservative system).
inline constexpr double kAbscissaZero = 1e-9;

/// EXPONENTIALLY_STABLE iff hyp.verdict, tau > 0 (and not flagged no_decay),
/// abscissa < -kAbscissaZero and a finite resolvent sup. Throws ContractError when the tags of hyp, fit and scan
/// disagree.
VerdictReport stability_verdict(const HypothesisReport& hyp, const DecayFit& fit,
                                const ResolventScan& scan, double abscissa);

}  // namespace dwave
