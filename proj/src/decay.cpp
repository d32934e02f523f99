#include "dwave/decay.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dwave/errors.hpp"
#include "dwave/io.hpp"

namespace dwave {

DecayFit fit_decay(const EnergyTrace& trace, double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction <= 1.0))
    throw ConfigurationError("window fraction must lie in (0, 1]");
  const std::size_t n = trace.size();
  if (n < 50) throw FitInfeasibleError("trace has fewer than 50 samples");
  const double t0 = trace.times.front(), t1 = trace.times.back();
  const double start = t1 - window_fraction * (t1 - t0);

  std::vector<double> t, y;
  for (std::size_t k = 0; k < n; ++k) {
    if (trace.times[k] < start) continue;
    const double e = trace.energy[k];
    if (!(e > 1e-300) || !std::isfinite(e))
      throw FitInfeasibleError("energy underflow in the fit window");
    t.push_back(trace.times[k]);
    y.push_back(std::log(e));
  }
  if (t.size() < 50) throw FitInfeasibleError("fewer than 50 samples in the fit window");

  const double m = static_cast<double>(t.size());
  double tm = 0.0, ym = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    tm += t[k];
    ym += y[k];
  }
  tm /= m;
  ym /= m;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    stt += (t[k] - tm) * (t[k] - tm);
    sty += (t[k] - tm) * (y[k] - ym);
    syy += (y[k] - ym) * (y[k] - ym);
  }
  if (!(stt > 0.0)) throw FitInfeasibleError("fit window has no time extent");
  const double slope = sty / stt;
  const double intercept = ym - slope * tm;
  double ssres = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    double r = y[k] - (intercept + slope * t[k]);
    ssres += r * r;
  }

  DecayFit f;
  f.tau = -slope / 2.0;
  // A flat log-energy is fitted exactly by a flat line.
  f.r_squared = syy <= 1e-24 * m ? 1.0 : std::max(0.0, 1.0 - ssres / syy);
  f.m_factor = trace.energy.front() > 0.0
                   ? std::exp(intercept) / trace.energy.front()
                   : std::numeric_limits<double>::quiet_NaN();
  f.window_start = t.front();
  f.window_end = t.back();
  f.samples = t.size();
  f.no_decay = !(f.tau > 1e-9);
  return f;
}

std::string DecayFit::to_key_value() const {
  std::ostringstream o;
  if (!tag.empty()) o << "config=" << tag << '\n';
  o << "tau=" << format_real(tau) << '\n';
  o << "energy_rate=" << format_real(2 * tau) << '\n';
  o << "m_factor=" << format_real(m_factor) << '\n';
  o << "r_squared=" << format_real(r_squared) << '\n';
  o << "window_start=" << format_real(window_start) << '\n';
  o << "window_end=" << format_real(window_end) << '\n';
  o << "samples=" << samples << '\n';
  o << "no_decay=" << (no_decay ? "true" : "false") << '\n';
  return o.str();
}

std::string to_string(Stability s) {
  return s == Stability::ExponentiallyStable ? "EXPONENTIALLY_STABLE" : "NOT_ESTABLISHED";
}

VerdictReport stability_verdict(const HypothesisReport& hyp, const DecayFit& fit,
                                const ResolventScan& scan, double abscissa) {
  if (hyp.tag != fit.tag || hyp.tag != scan.tag)
    throw ContractError("verdict inputs come from different configurations ('" +
                        hyp.tag + "', '" + fit.tag + "', '" + scan.tag + "')");
  VerdictReport r;
  r.tag = hyp.tag;
  r.hypothesis = hyp.verdict;
  r.tau = fit.tau;
  r.r_squared = fit.r_squared;
  r.abscissa = abscissa;
  r.sup_norm = scan.sup_norm;
  r.bound_kappa = scan.bound_kappa;
  r.rate_ratio = fit.tau != 0.0 ? -abscissa / fit.tau
                                : std::numeric_limits<double>::infinity();
  if (!hyp.verdict) r.failed.push_back("hypothesis");
  if (fit.no_decay || !(fit.tau > 0.0)) r.failed.push_back("decay_rate");
  if (!(abscissa < -kAbscissaZero)) r.failed.push_back("spectral_abscissa");
  if (!scan.finite()) r.failed.push_back("resolvent_sup");
  r.verdict = r.failed.empty() ? Stability::ExponentiallyStable : Stability::NotEstablished;
  return r;
}

std::string VerdictReport::to_text() const {
  std::ostringstream o;
  if (!tag.empty()) o << "config=" << tag << '\n';
  o << "verdict=" << to_string(verdict) << '\n';
  o << "failed=";
  for (std::size_t i = 0; i < failed.size(); ++i) o << (i ? ";" : "") << failed[i];
  o << '\n';
  o << "hypothesis=" << (hypothesis ? "true" : "false") << '\n';
  o << "tau=" << format_real(tau) << '\n';
  o << "energy_rate=" << format_real(2 * tau) << '\n';
  o << "r_squared=" << format_real(r_squared) << '\n';
  o << "spectral_abscissa=" << format_real(abscissa) << '\n';
  o << "spectral_energy_rate=" << format_real(-2 * abscissa) << '\n';
  o << "rate_ratio=" << format_real(rate_ratio) << '\n';
  o << "resolvent_sup=" << format_real(sup_norm) << '\n';
  o << "bound_kappa=" << format_real(bound_kappa) << '\n';
  return o.str();
}

std::string VerdictReport::csv_header() {
  return "config,verdict,failed,hypothesis,tau,r_squared,abscissa,rate_ratio,"
         "resolvent_sup,bound_kappa";
}

std::string VerdictReport::csv_row() const {
  std::ostringstream o;
  o << tag << ',' << to_string(verdict) << ',';
  for (std::size_t i = 0; i < failed.size(); ++i) o << (i ? ";" : "") << failed[i];
  o << ',' << (hypothesis ? "true" : "false") << ',' << format_real(tau) << ','
    << format_real(r_squared) << ',' << format_real(abscissa) << ','
    << format_real(rate_ratio) << ',' << format_real(sup_norm) << ','
    << format_real(bound_kappa);
  return o.str();
}

}  // namespace dwave
