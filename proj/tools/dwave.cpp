// dwave: config-driven command line front end.
//
//   dwave check     --config c.toml [--out dir]
//   dwave simulate  --config c.toml [--out dir]
//   dwave spectrum  --config c.toml [--out dir]
//   dwave resolvent --config c.toml [--out dir] [--threads n]
//   dwave verdict   --config c.toml [--out dir] [--threads n] [--assert-stable]
//   dwave demo      [--config configs_dir] [--out dir] [--threads n]
//
// Exit codes: 0 success, 1 verdict false, 2 configuration error,
// 3 numerical error.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "dwave/errors.hpp"
#include "dwave/io.hpp"
#include "dwave/pipeline.hpp"

#ifndef DWAVE_CONFIG_DIR
#define DWAVE_CONFIG_DIR "configs"
#endif

namespace {

using namespace dwave;

constexpr int kOk = 0;
constexpr int kVerdictFalse = 1;
constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

struct Options {
  std::string config;
  std::string out;
  bool assert_stable = false;
  int threads = 0;
  long seed = 0;
};

std::string out_dir(const Options& o, const ExperimentConfig& cfg) {
  return o.out.empty() ? cfg.output_dir : o.out;
}

int cmd_check(const Options& o) {
  auto cfg = load_config(o.config);
  auto r = write_check(cfg, out_dir(o, cfg));
  std::cout << r.to_key_value();
  return r.verdict ? kOk : kVerdictFalse;
}

int cmd_simulate(const Options& o) {
  auto cfg = load_config(o.config);
  const auto dir = out_dir(o, cfg);
  auto r = write_simulation(cfg, dir);
  const auto& t = r.trace;
  std::cout << "config=" << cfg.id << '\n'
            << "steps=" << t.size() - 1 << '\n'
            << "E0=" << format_real(t.energy.front()) << '\n'
            << "E_end=" << format_real(t.energy.back()) << '\n'
            << "max_identity_residual=" << format_real(t.max_residual()) << '\n'
            << "energy_csv=" << dir << "/energy.csv\n";
  return kOk;
}

int cmd_spectrum(const Options& o) {
  auto cfg = load_config(o.config);
  const auto dir = out_dir(o, cfg);
  auto eigs = write_spectrum(cfg, dir);
  std::cout << "config=" << cfg.id << '\n'
            << "eigenvalues=" << eigs.size() << '\n'
            << "spectral_abscissa=" << format_real(spectral_abscissa(eigs)) << '\n'
            << "spectrum_csv=" << dir << "/spectrum.csv\n";
  return kOk;
}

int cmd_resolvent(const Options& o) {
  auto cfg = load_config(o.config);
  const auto dir = out_dir(o, cfg);
  auto s = write_resolvent(cfg, dir, o.threads);
  std::cout << "config=" << cfg.id << '\n'
            << "points=" << s.lambdas.size() << '\n'
            << "resolvent_sup=" << format_real(s.sup_norm) << '\n'
            << "bound_kappa=" << format_real(s.bound_kappa) << '\n'
            << "resolvent_csv=" << dir << "/resolvent.csv\n";
  return kOk;
}

int cmd_verdict(const Options& o) {
  auto cfg = load_config(o.config);
  auto r = write_verdict(cfg, out_dir(o, cfg), o.threads);
  std::cout << r.verdict.to_text();
  if (o.assert_stable && !r.verdict.stable()) return kVerdictFalse;
  return kOk;
}

int cmd_demo(const Options& o) {
  const std::string dir = o.config.empty() ? DWAVE_CONFIG_DIR : o.config;
  const std::string out = o.out.empty() ? "out/demo" : o.out;
  auto d = run_demo(dir, out, o.threads);
  std::cout << d.summary_text;
  std::cout << "summary written to " << out << "/summary.csv\n";
  if (o.assert_stable && !d.all_stable()) return kVerdictFalse;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability experiments for degenerate damped wave equations"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", o.config,
                              config_required ? "experiment config (TOML)"
                                              : "directory holding the bundled configs");
    if (config_required) c->required();
    sub->add_option("--out", o.out, "output directory (default from the config)");
    sub->add_option("--threads", o.threads, "resolvent scan workers (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", o.seed, "seed for randomized property-test helpers");
  };

  auto* check = app.add_subcommand("check", "hypothesis check; exit 1 if it fails");
  auto* simulate = app.add_subcommand("simulate", "energy trace and snapshots");
  auto* spec = app.add_subcommand("spectrum", "eigenvalues of the discrete generator");
  auto* res = app.add_subcommand("resolvent", "resolvent norm scan along the imaginary axis");
  auto* verdict = app.add_subcommand("verdict", "full pipeline and stability verdict");
  auto* demo = app.add_subcommand("demo", "run the four bundled examples");
  for (auto* s : {check, simulate, spec, res, verdict}) add_common(s, true);
  add_common(demo, false);
  for (auto* s : {verdict, demo})
    s->add_flag("--assert-stable", o.assert_stable, "exit 1 unless EXPONENTIALLY_STABLE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*check) return cmd_check(o);
    if (*simulate) return cmd_simulate(o);
    if (*spec) return cmd_spectrum(o);
    if (*res) return cmd_resolvent(o);
    if (*verdict) return cmd_verdict(o);
    if (*demo) return cmd_demo(o);
  } catch (const ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidCoefficientError& e) {
    std::cerr << "invalid coefficient: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kConfigError;
  } catch (const OutOfScopeError& e) {
    std::cerr << "out of scope: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalError;
  }
  return kOk;
}
