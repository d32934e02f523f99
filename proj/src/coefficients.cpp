#include "dwave/coefficients.hpp"

#include <algorithm>
#include <boost/math/interpolators/cubic_hermite.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dwave/errors.hpp"
#include "dwave/io.hpp"

namespace dwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Stand-in for the limit x1 + 2 eps -> 0 in the threshold search.
constexpr double kLimitWidth = 1e-20;

void check_unit(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("abscissa " + format_real(x) + " outside [0, 1]");
}

int sign(double v) { return (v > 0) - (v < 0); }

// Fritsch-Carlson slopes (the same three-point end rule as scipy's pchip).
std::vector<double> monotone_slopes(const std::vector<double>& x,
                                    const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), del(n - 1), d(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    del[k] = (y[k + 1] - y[k]) / h[k];
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (sign(del[k - 1]) * sign(del[k]) <= 0) continue;
    double w1 = 2 * h[k] + h[k - 1];
    double w2 = h[k] + 2 * h[k - 1];
    d[k] = (w1 + w2) / (w1 / del[k - 1] + w2 / del[k]);
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (sign(s) != sign(d0)) return 0.0;
    if (sign(d0) != sign(d1) && std::abs(s) > 3 * std::abs(d0)) return 3 * d0;
    return s;
  };
  d[0] = end_slope(h[0], h[1], del[0], del[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// CoefficientProfile

struct CoefficientProfile::Interpolant {
  boost::math::interpolators::cubic_hermite<std::vector<double>> spline;
  std::vector<double> x;
  std::vector<double> fd;  // central differences at the samples
};

CoefficientProfile::CoefficientProfile(std::variant<PowerLaw, Tabulated> kind,
                                       CoefficientRole role)
    : kind_(std::move(kind)), role_(role) {
  if (auto* t = std::get_if<Tabulated>(&kind_)) {
    auto xs = t->x, ys = t->value;
    auto slopes = monotone_slopes(xs, ys);
    std::vector<double> fd(xs.size());
    const std::size_t n = xs.size();
    fd[0] = (ys[1] - ys[0]) / (xs[1] - xs[0]);
    fd[n - 1] = (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i)
      fd[i] = (ys[i + 1] - ys[i - 1]) / (xs[i + 1] - xs[i - 1]);
    interp_ = std::make_shared<const Interpolant>(Interpolant{
        {std::move(xs), std::move(ys), std::move(slopes)}, t->x, std::move(fd)});
  }
}

CoefficientProfile CoefficientProfile::power_law(double coefficient,
                                                 double exponent,
                                                 CoefficientRole role) {
  if (!std::isfinite(coefficient) || !std::isfinite(exponent))
    throw ConfigurationError("power law parameters must be finite");
  if (exponent < 0.0)
    throw ConfigurationError("power law exponent must be >= 0");
  if (role == CoefficientRole::Diffusion ? coefficient <= 0.0
                                         : coefficient < 0.0)
    throw ConfigurationError("power law coefficient must be positive");
  return CoefficientProfile(PowerLaw{coefficient, exponent}, role);
}

CoefficientProfile CoefficientProfile::zero_drift() {
  return CoefficientProfile(PowerLaw{0.0, 0.0}, CoefficientRole::Drift);
}

CoefficientProfile CoefficientProfile::tabulated(std::vector<double> x,
                                                 std::vector<double> value,
                                                 CoefficientRole role) {
  if (x.size() != value.size())
    throw ConfigurationError("table columns differ in length");
  if (x.size() < 3)
    throw ConfigurationError("table needs at least 3 samples");
  if (x.front() != 0.0 || x.back() != 1.0)
    throw ConfigurationError("table must cover [0, 1] exactly");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(value[i]))
      throw ConfigurationError("table contains non-finite entries");
    if (i > 0 && !(x[i] > x[i - 1]))
      throw ConfigurationError("table abscissas must be strictly increasing");
  }
  if (role == CoefficientRole::Diffusion) {
    if (value[0] < 0.0)
      throw InvalidCoefficientError("diffusion coefficient negative at 0");
    for (std::size_t i = 1; i < x.size(); ++i)
      if (value[i] <= 0.0)
        throw InvalidCoefficientError(
            "diffusion coefficient vanishes at interior point " +
            format_real(x[i]));
  }
  return CoefficientProfile(Tabulated{std::move(x), std::move(value)}, role);
}

CoefficientProfile CoefficientProfile::from_csv(const std::string& path,
                                                CoefficientRole role) {
  auto rows = read_numeric_csv(path);
  std::vector<double> x, v;
  for (const auto& r : rows) {
    if (r.size() != 2) throw InputError(path + ": expected two columns");
    x.push_back(r[0]);
    v.push_back(r[1]);
  }
  return tabulated(std::move(x), std::move(v), role);
}

double CoefficientProfile::operator()(double x) const {
  check_unit(x);
  if (auto* p = std::get_if<PowerLaw>(&kind_)) {
    if (p->exponent == 0.0) return p->coefficient;
    return p->coefficient * std::pow(x, p->exponent);
  }
  return interp_->spline(x);
}

double CoefficientProfile::derivative(double x) const {
  check_unit(x);
  if (auto* p = std::get_if<PowerLaw>(&kind_)) {
    if (p->exponent == 0.0) return 0.0;
    if (p->exponent == 1.0) return p->coefficient;
    if (x == 0.0) return p->exponent > 1.0 ? 0.0 : kInf;
    return p->coefficient * p->exponent * std::pow(x, p->exponent - 1.0);
  }
  const auto& xs = interp_->x;
  const auto& fd = interp_->fd;
  if (x >= xs.back()) return fd.back();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
  double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
  return (1 - t) * fd[i] + t * fd[i + 1];
}

bool CoefficientProfile::is_identically_zero() const {
  if (auto* p = std::get_if<PowerLaw>(&kind_)) return p->coefficient == 0.0;
  const auto& v = std::get<Tabulated>(kind_).value;
  return std::all_of(v.begin(), v.end(), [](double s) { return s == 0.0; });
}

CoefficientProfile CoefficientProfile::scaled(double c) const {
  if (!(c > 0.0)) throw ConfigurationError("scale factor must be positive");
  if (auto* p = std::get_if<PowerLaw>(&kind_))
    return CoefficientProfile(PowerLaw{p->coefficient * c, p->exponent}, role_);
  auto t = std::get<Tabulated>(kind_);
  for (auto& v : t.value) v *= c;
  return CoefficientProfile(std::move(t), role_);
}

// ---------------------------------------------------------------------------
// DampingProfile

void DampingProfile::validate() const {
  if (!(0.0 < x1 && x1 < x2 && x2 < 1.0))
    throw ConfigurationError("damping support needs 0 < x1 < x2 < 1");
  if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0))
    throw ConfigurationError("damping exponents must be >= 0");
}

double DampingProfile::operator()(double x) const {
  check_unit(x);
  if (x < x1 || x > x2) return 0.0;
  double f1 = alpha1 == 0.0 ? 1.0 : std::pow(x - x1, alpha1);
  double f2 = alpha2 == 0.0 ? 1.0 : std::pow(x2 - x, alpha2);
  return f1 * f2;
}

// ---------------------------------------------------------------------------
// sup search

namespace {

std::vector<double> sample_points(double lo, double hi) {
  std::vector<double> pts;
  const int half = kSupBasePoints / 2;
  pts.reserve(kSupBasePoints + 2);
  if (lo == 0.0) {
    double l0 = std::log10(kSupFloor), l1 = std::log10(hi);
    for (int i = 0; i < half; ++i)
      pts.push_back(std::pow(10.0, l0 + (l1 - l0) * i / (half - 1)));
    for (int i = 1; i <= half; ++i) pts.push_back(hi * i / half);
  } else {
    const double w = hi - lo;
    const int quarter = kSupBasePoints / 4;
    for (int i = 0; i <= half; ++i) pts.push_back(lo + w * i / half);
    for (int i = 0; i < quarter; ++i) {
      double off = w * std::pow(10.0, -14.0 + 14.0 * i / (quarter - 1));
      pts.push_back(lo + off);
      pts.push_back(hi - off);
    }
  }
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::erase_if(pts, [&](double p) { return p < (lo == 0.0 ? kSupFloor : lo) || p > hi; });
  return pts;
}

// Golden-section search for the max of g on [l, r].
SupResult golden_max(const std::function<double(double)>& g, double l, double r) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = r - inv_phi * (r - l), d = l + inv_phi * (r - l);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 200; ++it) {
    if (r - l <= 1e-15 * std::max(std::abs(l), std::abs(r))) break;
    if (gc >= gd) {
      r = d;
      d = c;
      gd = gc;
      c = r - inv_phi * (r - l);
      gc = g(c);
    } else {
      l = c;
      c = d;
      gc = gd;
      d = l + inv_phi * (r - l);
      gd = g(d);
    }
  }
  return gc >= gd ? SupResult{gc, c} : SupResult{gd, d};
}

}  // namespace

SupResult sup_abs(const std::function<double(double)>& f, double lo, double hi) {
  if (!(hi > lo) || lo < 0.0)
    throw ConfigurationError("sup interval must satisfy 0 <= lo < hi");
  auto g = [&](double x) {
    double v = std::abs(f(x));
    return std::isnan(v) ? kInf : v;
  };
  auto pts = sample_points(lo, hi);
  std::size_t best = 0;
  double best_v = -1.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double v = g(pts[i]);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  SupResult res{best_v, pts[best]};
  if (!std::isfinite(best_v)) return res;
  double l = pts[best > 0 ? best - 1 : 0];
  double r = pts[std::min(best + 1, pts.size() - 1)];
  if (r > l) {
    auto ref = golden_max(g, l, r);
    if (ref.value > res.value) res = ref;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Degeneracy

std::string to_string(Degeneracy d) {
  switch (d) {
    case Degeneracy::WeaklyDegenerate: return "WeaklyDegenerate";
    case Degeneracy::StronglyDegenerate: return "StronglyDegenerate";
    case Degeneracy::NonDegenerate: return "NonDegenerate";
    case Degeneracy::OutOfScope: return "OutOfScope";
  }
  return "?";
}

std::string to_string(SystemKind s) {
  return s == SystemKind::InternalDamping ? "internal" : "transmission";
}

namespace {

// x a'(x) / a(x), exact for power laws.
double log_derivative(const CoefficientProfile& a, double x) {
  if (auto* p = a.as_power_law()) return p->exponent;
  return x * a.derivative(x) / a(x);
}

// x b/a, exact ratio for power-law pairs so tiny x does not underflow.
double x_b_over_a(const CoefficientProfile& a, const CoefficientProfile& b,
                  double x) {
  auto* pa = a.as_power_law();
  auto* pb = b.as_power_law();
  if (pb && pb->coefficient == 0.0) return 0.0;
  if (pa && pb)
    return pb->coefficient / pa->coefficient *
           std::pow(x, 1.0 + pb->exponent - pa->exponent);
  return x * b(x) / a(x);
}

double b_over_a(const CoefficientProfile& a, const CoefficientProfile& b,
                double s) {
  auto* pa = a.as_power_law();
  auto* pb = b.as_power_law();
  if (pb && pb->coefficient == 0.0) return 0.0;
  if (pa && pb) {
    double e = pb->exponent - pa->exponent;
    double c = pb->coefficient / pa->coefficient;
    return e == 0.0 ? c : c * std::pow(s, e);
  }
  return b(s) / a(s);
}

// Left end of the sampling range for quotients involving a'. For a table
// with a(0) = 0 the first cell is skipped: there the one-sided difference
// a'(0) and the interpolant a(x) do not vanish at the same rate, so
// x a'/a would blow up as an artefact of the table, not of the data.
double quotient_floor(const CoefficientProfile& a, double lo) {
  if (auto* t = a.as_tabulated(); t && t->value.front() == 0.0)
    return std::max(lo, t->x[1]);
  return lo;
}

void check_positive(const CoefficientProfile& a) {
  if (a.is_power_law()) return;  // enforced at construction
  auto pts = sample_points(0.0, 1.0);
  for (double x : pts)
    if (!(a(x) > 0.0))
      throw InvalidCoefficientError("a vanishes at interior point " +
                                    format_real(x));
}

Degeneracy classify(double K, double a0) {
  if (a0 > 0.0) return Degeneracy::NonDegenerate;
  if (K >= 2.0) return Degeneracy::OutOfScope;
  if (K >= 1.0) return Degeneracy::StronglyDegenerate;
  if (K > 0.0) return Degeneracy::WeaklyDegenerate;
  return Degeneracy::NonDegenerate;
}

}  // namespace

DegeneracyReport degeneracy_constant(const CoefficientProfile& a) {
  if (a.role() != CoefficientRole::Diffusion)
    throw ConfigurationError("degeneracy constant needs a diffusion profile");
  check_positive(a);
  DegeneracyReport rep;
  if (auto* p = a.as_power_law()) {
    rep.K = p->exponent;
    rep.sup_location = 1.0;
  } else {
    // Secant slopes of log a against log x between neighbouring samples.
    // Exact for sampled power laws; the differenced derivative is not, near
    // a degenerate end.
    const auto& t = *a.as_tabulated();
    rep.K = 0.0;
    for (std::size_t i = 1; i + 1 < t.x.size(); ++i) {
      if (!(t.x[i] > 0.0)) continue;
      double v = std::abs((std::log(t.value[i + 1]) - std::log(t.value[i])) /
                          (std::log(t.x[i + 1]) - std::log(t.x[i])));
      if (v > rep.K) {
        rep.K = v;
        rep.sup_location = t.x[i + 1];
      }
    }
  }
  rep.classification = classify(rep.K, a(0.0));
  return rep;
}

// ---------------------------------------------------------------------------
// Feller weight

WeightEvaluator::WeightEvaluator(CoefficientProfile a, CoefficientProfile b,
                                 double quadrature_tolerance)
    : a_(std::move(a)), b_(std::move(b)), tol_(quadrature_tolerance) {
  if (!(tol_ > 0.0)) throw ConfigurationError("quadrature tolerance must be > 0");
}

double WeightEvaluator::integrate_ratio(double lo, double hi) const {
  check_unit(lo);
  check_unit(hi);
  if (lo == hi || b_.is_identically_zero()) return 0.0;
  double l = std::min(lo, hi), r = std::max(lo, hi);
  thread_local boost::math::quadrature::tanh_sinh<double> q(15);
  double err = 0.0, l1 = 0.0, val = 0.0;
  try {
    val = q.integrate([this](double s) { return b_over_a(a_, b_, s); }, l, r,
                      double(tol_), &err, &l1);
  } catch (const std::exception& e) {
    throw IntegrabilityError(std::string("b/a quadrature failed: ") + e.what());
  }
  if (!std::isfinite(val) || std::abs(val) > 1e3 ||
      err > 1e-6 * std::max(1.0, l1))
    throw IntegrabilityError("b/a does not appear integrable on [" +
                             format_real(l) + ", " + format_real(r) + "]");
  return lo <= hi ? val : -val;
}

double WeightEvaluator::log_eta(double x) const {
  return integrate_ratio(0.5, x);
}

double WeightEvaluator::eta(double x) const { return std::exp(log_eta(x)); }

std::vector<double> WeightEvaluator::eta(std::span<const double> xs) const {
  std::vector<double> out(xs.size());
  if (xs.empty()) return out;
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] < xs[i - 1]) throw ContractError("eta: points not ascending");
  // Split at 1/2 and accumulate outward so each quadrature covers one cell.
  auto mid = std::lower_bound(xs.begin(), xs.end(), 0.5);
  std::size_t k = static_cast<std::size_t>(mid - xs.begin());
  double acc = 0.0, prev = 0.5;
  for (std::size_t i = k; i < xs.size(); ++i) {
    acc += integrate_ratio(prev, xs[i]);
    prev = xs[i];
    out[i] = std::exp(acc);
  }
  acc = 0.0;
  prev = 0.5;
  for (std::size_t i = k; i-- > 0;) {
    acc += integrate_ratio(prev, xs[i]);
    prev = xs[i];
    out[i] = std::exp(acc);
  }
  return out;
}

double WeightEvaluator::sigma(double x) const { return a_(x) / eta(x); }

// ---------------------------------------------------------------------------
// Hardy-Poincare

double hardy_poincare_constant(const CoefficientProfile& a,
                               const CoefficientProfile& b, double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw DomainError("beta must lie in (0, 1)");
  const double cp = 1.0 / (std::numbers::pi * std::numbers::pi);
  double inv_a = sup_abs([&](double x) { return 1.0 / a(x); }, beta, 1.0).value;
  WeightEvaluator w(a, b);
  std::vector<double> pts;
  for (int i = 0; i <= 2000; ++i) pts.push_back(i / 2000.0);
  for (int i = 0; i < 200; ++i) pts.push_back(std::pow(10.0, -12.0 + 9.0 * i / 199));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto eta = w.eta(pts);
  double eta_max = *std::max_element(eta.begin(), eta.end());
  return (4.0 / a(1.0) + inv_a * cp) * eta_max;
}

HardyPoincareChoice best_hardy_poincare_constant(const CoefficientProfile& a,
                                                 const CoefficientProfile& b) {
  HardyPoincareChoice best{0.0, kInf};
  for (int i = 1; i <= 9; ++i) {
    double beta = i / 10.0;
    double c = hardy_poincare_constant(a, b, beta);
    if (c < best.constant) best = {beta, c};
  }
  return best;
}

// ---------------------------------------------------------------------------
// M / N constants

namespace {

struct Quotients {
  const CoefficientProfile& a;
  const CoefficientProfile& b;
  double q1(double x) const { return x_b_over_a(a, b, x); }
  double q2(double x) const { return log_derivative(a, x) - q1(x); }
  // (x-1) b/a and (x-1)(a'-b)/a
  double r1(double x) const { return (x - 1.0) / x * q1(x); }
  double r2(double x) const { return (x - 1.0) / x * q2(x); }
};

void check_pair(const CoefficientProfile& a, const CoefficientProfile& b) {
  if (a.role() != CoefficientRole::Diffusion || b.role() != CoefficientRole::Drift)
    throw ConfigurationError("expected (diffusion, drift) profiles");
}

double left_sup(const Quotients& q, bool second, double hi) {
  double lo = quotient_floor(q.a, 0.0);
  if (lo >= hi) lo = 0.0;
  return sup_abs([&](double x) { return second ? q.q2(x) : q.q1(x); }, lo, hi)
      .value;
}

double right_sup(const Quotients& q, bool second, double lo) {
  return sup_abs([&](double x) { return second ? q.r2(x) : q.r1(x); },
                 quotient_floor(q.a, lo), 1.0)
      .value;
}

}  // namespace

MConstants m_constants(const CoefficientProfile& a, const CoefficientProfile& b,
                       double x1, double x2, double epsilon) {
  check_pair(a, b);
  const double s0 = x1 + 2 * epsilon, s1 = x2 - 2 * epsilon;
  if (!(epsilon > 0.0 && 0.0 < x1 && x1 < s0 && s0 < s1 && s1 < x2 && x2 < 1.0))
    throw ConfigurationError(
        "need 0 < x1 < x1+2eps < x2-2eps < x2 < 1 with eps > 0");
  Quotients q{a, b};
  MConstants m;
  m.m01 = left_sup(q, false, s0);
  m.m02 = left_sup(q, true, s0);
  m.m11 = right_sup(q, false, s1);
  m.m12 = right_sup(q, true, s1);
  m.epsilon = epsilon;
  m.x1 = x1;
  m.x2 = x2;
  return m;
}

NConstants n_constants(const CoefficientProfile& a, const CoefficientProfile& b) {
  check_pair(a, b);
  Quotients q{a, b};
  return {left_sup(q, true, 1.0), left_sup(q, false, 1.0)};
}

namespace {

DegeneracyReport in_scope_degeneracy(const CoefficientProfile& a) {
  auto d = degeneracy_constant(a);
  if (d.K >= 2.0)
    throw OutOfScopeError("K = " + format_real(d.K) + " >= 2 is not covered");
  return d;
}

}  // namespace

HypothesisReport check_hypothesis_internal(const CoefficientProfile& a,
                                           const CoefficientProfile& b,
                                           double x1, double x2,
                                           double epsilon) {
  HypothesisReport r;
  r.system = SystemKind::InternalDamping;
  r.degeneracy = in_scope_degeneracy(a);
  auto m = m_constants(a, b, x1, x2, epsilon);
  r.constants = m;
  r.bound1 = 1.0 - r.degeneracy.K / 2.0;
  r.bound2 = 1.0 + r.degeneracy.K / 2.0;
  r.margin1 = r.bound1 - (m.m01 + m.m11);
  r.margin2 = r.bound2 - (m.m02 + m.m12);
  r.verdict = r.margin1 > 0.0 && r.margin2 > 0.0;
  return r;
}

HypothesisReport check_hypothesis_transmission(const CoefficientProfile& a,
                                               const CoefficientProfile& b) {
  HypothesisReport r;
  r.system = SystemKind::Transmission;
  r.degeneracy = in_scope_degeneracy(a);
  auto n = n_constants(a, b);
  r.constants = n;
  r.bound1 = 1.0 + r.degeneracy.K / 2.0;
  r.bound2 = 1.0 - r.degeneracy.K / 2.0;
  r.margin1 = r.bound1 - n.n1;
  r.margin2 = r.bound2 - n.n2;
  r.verdict = r.margin1 > 0.0 && r.margin2 > 0.0;
  return r;
}

namespace {

// Smallest s in [0, 1) with margin(s) > 0, margin non-decreasing in s.
double bisect_threshold(const std::function<double(double)>& margin) {
  const double lo_edge = 1e-12, hi_edge = 1.0 - 1e-12;
  if (margin(lo_edge) > 0.0) return 0.0;
  if (!(margin(hi_edge) > 0.0))
    throw InfeasibleError("no damped region satisfies the hypothesis");
  double lo = lo_edge, hi = hi_edge;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    (margin(mid) > 0.0 ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

ThresholdParts threshold_parts(const CoefficientProfile& a,
                               const CoefficientProfile& b) {
  check_pair(a, b);
  auto d = in_scope_degeneracy(a);
  Quotients q{a, b};
  const double m01 = left_sup(q, false, kLimitWidth);
  const double m02 = left_sup(q, true, kLimitWidth);
  ThresholdParts t;
  t.left = bisect_threshold([&](double s) {
    return (1.0 - d.K / 2.0) - (m01 + right_sup(q, false, s));
  });
  t.right = bisect_threshold([&](double s) {
    return (1.0 + d.K / 2.0) - (m02 + right_sup(q, true, s));
  });
  return t;
}

double damped_region_threshold(const CoefficientProfile& a,
                               const CoefficientProfile& b) {
  auto t = threshold_parts(a, b);
  return std::max(t.left, t.right);
}

// ---------------------------------------------------------------------------
// Report serialization

std::string HypothesisReport::to_key_value() const {
  std::ostringstream o;
  if (!tag.empty()) o << "config=" << tag << '\n';
  o << "system=" << to_string(system) << '\n';
  o << "K=" << format_real(degeneracy.K) << '\n';
  o << "classification=" << to_string(degeneracy.classification) << '\n';
  o << "K_sup_location=" << format_real(degeneracy.sup_location) << '\n';
  if (auto* m = std::get_if<MConstants>(&constants)) {
    o << "x1=" << format_real(m->x1) << '\n';
    o << "x2=" << format_real(m->x2) << '\n';
    o << "epsilon=" << format_real(m->epsilon) << '\n';
    o << "M01=" << format_real(m->m01) << '\n';
    o << "M02=" << format_real(m->m02) << '\n';
    o << "M11=" << format_real(m->m11) << '\n';
    o << "M12=" << format_real(m->m12) << '\n';
  } else {
    const auto& n = std::get<NConstants>(constants);
    o << "N1=" << format_real(n.n1) << '\n';
    o << "N2=" << format_real(n.n2) << '\n';
  }
  o << "bound1=" << format_real(bound1) << '\n';
  o << "bound2=" << format_real(bound2) << '\n';
  o << "margin1=" << format_real(margin1) << '\n';
  o << "margin2=" << format_real(margin2) << '\n';
  o << "verdict=" << (verdict ? "true" : "false") << '\n';
  return o.str();
}

std::string HypothesisReport::csv_header() const {
  std::string c = std::holds_alternative<MConstants>(constants)
                      ? "M01,M02,M11,M12"
                      : "N1,N2";
  return "config,system,K,classification," + c +
         ",bound1,bound2,margin1,margin2,verdict";
}

std::string HypothesisReport::csv_row() const {
  std::ostringstream o;
  o << tag << ',' << to_string(system) << ',' << format_real(degeneracy.K)
    << ',' << to_string(degeneracy.classification) << ',';
  if (auto* m = std::get_if<MConstants>(&constants))
    o << format_real(m->m01) << ',' << format_real(m->m02) << ','
      << format_real(m->m11) << ',' << format_real(m->m12);
  else {
    const auto& n = std::get<NConstants>(constants);
    o << format_real(n.n1) << ',' << format_real(n.n2);
  }
  o << ',' << format_real(bound1) << ',' << format_real(bound2) << ','
    << format_real(margin1) << ',' << format_real(margin2) << ','
    << (verdict ? "true" : "false");
  return o.str();
}

}  // namespace dwave
