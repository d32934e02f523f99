#pragma once

// Coefficient functions a (diffusion), b (drift) and h (internal damping),
// and the constants derived from them: the degeneracy constant K, the Feller
// weight eta, sigma = a / eta, the Hardy-Poincare constant and the sup-norm
// constants entering the two stability hypotheses.

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace dwave {

enum class CoefficientRole { Diffusion, Drift };

/// c * x^k on [0, 1].
struct PowerLaw {
  double coefficient = 1.0;
  double exponent = 0.0;
};

/// Samples (x_i, value_i), strictly increasing in x and covering [0, 1].
struct Tabulated {
  std::vector<double> x;
  std::vector<double> value;
};

/// A scalar coefficient on [0, 1], given in closed power-law form or by a
/// table. Tables are interpolated with a monotone (Fritsch-Carlson) cubic;
/// their derivative is the central difference on the sample grid, linearly
/// interpolated between samples.
class CoefficientProfile {
 public:
  static CoefficientProfile power_law(double coefficient, double exponent,
                                      CoefficientRole role);
  static CoefficientProfile tabulated(std::vector<double> x,
                                      std::vector<double> value,
                                      CoefficientRole role);
  /// Two-column CSV (x,value); a non-numeric first line is taken as header.
  static CoefficientProfile from_csv(const std::string& path,
                                     CoefficientRole role);
  /// b == 0.
  static CoefficientProfile zero_drift();

  /// Throws DomainError outside [0, 1].
  double operator()(double x) const;
  double derivative(double x) const;

  CoefficientRole role() const { return role_; }
  bool is_power_law() const { return std::holds_alternative<PowerLaw>(kind_); }
  const PowerLaw* as_power_law() const { return std::get_if<PowerLaw>(&kind_); }
  const Tabulated* as_tabulated() const { return std::get_if<Tabulated>(&kind_); }
  bool is_identically_zero() const;

  /// Same profile multiplied by c > 0.
  CoefficientProfile scaled(double c) const;

 private:
  struct Interpolant;

  CoefficientProfile(std::variant<PowerLaw, Tabulated> kind,
                     CoefficientRole role);

  std::variant<PowerLaw, Tabulated> kind_;
  CoefficientRole role_;
  std::shared_ptr<const Interpolant> interp_;
};

/// h(x) = |x - x1|^alpha1 |x - x2|^alpha2 on [x1, x2], zero elsewhere.
/// A zero exponent contributes the factor 1 (also at the endpoint itself).
struct DampingProfile {
  double x1 = 0.0;
  double x2 = 1.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;

  /// Checks 0 < x1 < x2 < 1 and alpha >= 0; throws ConfigurationError.
  void validate() const;
  double operator()(double x) const;
};

enum class Degeneracy {
  WeaklyDegenerate,
  StronglyDegenerate,
  NonDegenerate,
  OutOfScope
};

std::string to_string(Degeneracy d);

struct DegeneracyReport {
  double K = 0.0;
  Degeneracy classification = Degeneracy::NonDegenerate;
  double sup_location = 1.0;
};

/// K = sup_{(0,1]} x |a'(x)| / a(x) and the WD/SD classification.
/// Power laws use the closed form K = exponent; tables are sampled.
/// Throws InvalidCoefficientError if a is not positive on (0, 1].
DegeneracyReport degeneracy_constant(const CoefficientProfile& a);

// ---------------------------------------------------------------------------
// Sup-norm estimation

struct SupResult {
  double value = 0.0;
  double location = 0.0;
};

/// Resolution of the sampling stage of sup_abs.
inline constexpr int kSupBasePoints = 10000;
/// Smallest abscissa sampled when an interval is open at 0.
inline constexpr double kSupFloor = 1e-30;

/// sup of |f| over the interval (lo, hi]. When lo == 0 the left end is open
/// and sampled log-spaced down to kSupFloor; otherwise lo is included. The
/// sample maximum is refined by golden-section search over its neighbouring
/// cells.
SupResult sup_abs(const std::function<double(double)>& f, double lo, double hi);

// ---------------------------------------------------------------------------
// Feller weight

/// eta(x) = exp( int_{1/2}^x b/a ds ) and sigma = a / eta.
class WeightEvaluator {
 public:
  WeightEvaluator(CoefficientProfile a, CoefficientProfile b,
                  double quadrature_tolerance = 1e-12);

  /// Throws IntegrabilityError if b/a is not integrable up to x.
  double eta(double x) const;
  /// eta at every point of an ascending list, integrating segment by segment.
  std::vector<double> eta(std::span<const double> ascending) const;
  double log_eta(double x) const;
  /// a(x)/eta(x); at x = 0 this is the limit, i.e. a(0)/eta(0).
  double sigma(double x) const;

  const CoefficientProfile& a() const { return a_; }
  const CoefficientProfile& b() const { return b_; }
  double tolerance() const { return tol_; }

  /// int_lo^hi b/a ds.
  double integrate_ratio(double lo, double hi) const;

 private:
  CoefficientProfile a_;
  CoefficientProfile b_;
  double tol_;
};

/// (4/a(1) + max_{[beta,1]} (1/a) * C_P) * max_{[0,1]} eta, C_P = 1/pi^2.
double hardy_poincare_constant(const CoefficientProfile& a,
                               const CoefficientProfile& b, double beta = 0.5);

struct HardyPoincareChoice {
  double beta = 0.5;
  double constant = 0.0;
};

/// Smallest constant over beta in {0.1, 0.2, ..., 0.9}.
HardyPoincareChoice best_hardy_poincare_constant(const CoefficientProfile& a,
                                                 const CoefficientProfile& b);

// ---------------------------------------------------------------------------
// Hypothesis constants

struct MConstants {
  double m01 = 0.0;
  double m02 = 0.0;
  double m11 = 0.0;
  double m12 = 0.0;
  double epsilon = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
};

struct NConstants {
  double n1 = 0.0;
  double n2 = 0.0;
};

/// The four sup norms of x b/a, x (a'-b)/a over (0, x1+2eps) and of
/// (x-1) b/a, (x-1)(a'-b)/a over (x2-2eps, 1).
/// Throws ConfigurationError unless 0 < x1 < x1+2eps < x2-2eps < x2 < 1.
MConstants m_constants(const CoefficientProfile& a, const CoefficientProfile& b,
                       double x1, double x2, double epsilon);

/// N1 = sup |x (a'-b)/a|, N2 = sup |x b/a| over (0, 1).
NConstants n_constants(const CoefficientProfile& a, const CoefficientProfile& b);

enum class SystemKind { InternalDamping, Transmission };

std::string to_string(SystemKind s);

struct HypothesisReport {
  SystemKind system = SystemKind::InternalDamping;
  DegeneracyReport degeneracy;
  std::variant<MConstants, NConstants> constants;
  double bound1 = 0.0;  // 1 - K/2 (internal) or 1 + K/2 (transmission)
  double bound2 = 0.0;
  double margin1 = 0.0;
  double margin2 = 0.0;
  bool verdict = false;
  std::string tag;  // configuration identifier

  std::string to_key_value() const;
  std::string csv_header() const;
  std::string csv_row() const;
};

/// M01 + M11 < 1 - K/2 and M02 + M12 < 1 + K/2.
/// Throws OutOfScopeError when K >= 2.
HypothesisReport check_hypothesis_internal(const CoefficientProfile& a,
                                           const CoefficientProfile& b,
                                           double x1, double x2,
                                           double epsilon);

/// N1 < 1 + K/2 and N2 < 1 - K/2. Throws OutOfScopeError when K >= 2.
HypothesisReport check_hypothesis_transmission(const CoefficientProfile& a,
                                               const CoefficientProfile& b);

struct ThresholdParts {
  double left = 0.0;   // from M01 + M11(s) < 1 - K/2
  double right = 0.0;  // from M02 + M12(s) < 1 + K/2
};

/// Per-condition thresholds on s = x2 - 2eps in the limit x1 + 2eps -> 0.
ThresholdParts threshold_parts(const CoefficientProfile& a,
                               const CoefficientProfile& b);

/// Smallest s in [0, 1) such that both internal-damping conditions hold for
/// every x2 - 2eps > s in the limit x1 + 2eps -> 0 (bisection, 1e-12).
/// Throws InfeasibleError when no such s exists.
double damped_region_threshold(const CoefficientProfile& a,
                               const CoefficientProfile& b);

}  // namespace dwave
