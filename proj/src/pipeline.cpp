#include "dwave/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "dwave/errors.hpp"
#include "dwave/io.hpp"

namespace dwave {

namespace fs = std::filesystem;

CoefficientSet coefficient_set(const ExperimentConfig& cfg) {
  CoefficientSet c{make_profile(cfg, cfg.a, CoefficientRole::Diffusion),
                   make_profile(cfg, cfg.b, CoefficientRole::Drift), std::nullopt, 0.0};
  if (cfg.system == SystemKind::InternalDamping) {
    c.epsilon = cfg.damping.epsilon;
    if (cfg.damping.enabled)
      c.damping = DampingProfile{cfg.damping.x1, cfg.damping.x2, cfg.damping.alpha1,
                                 cfg.damping.alpha2};
  }
  return c;
}

Mesh build_mesh(const ExperimentConfig& cfg) {
  if (cfg.system == SystemKind::InternalDamping) return build_graded(cfg.n, cfg.grading);
  return build_composite(cfg.n, cfg.grading, cfg.transmission.n_right, cfg.transmission.L);
}

GeneratorMatrix build_generator(const ExperimentConfig& cfg) {
  auto c = coefficient_set(cfg);
  auto mesh = build_mesh(cfg);
  if (cfg.system == SystemKind::InternalDamping) return assemble_internal(mesh, c);
  return assemble_transmission(mesh, c, cfg.transmission.L,
                               cfg.transmission.boundary_damping);
}

HypothesisReport run_check(const ExperimentConfig& cfg) {
  auto a = make_profile(cfg, cfg.a, CoefficientRole::Diffusion);
  auto b = make_profile(cfg, cfg.b, CoefficientRole::Drift);
  HypothesisReport r =
      cfg.system == SystemKind::InternalDamping
          ? check_hypothesis_internal(a, b, cfg.damping.x1, cfg.damping.x2,
                                      cfg.damping.epsilon)
          : check_hypothesis_transmission(a, b);
  r.tag = cfg.id;
  return r;
}

SimulationResult run_simulation(const ExperimentConfig& cfg, const GeneratorMatrix& g,
                                const std::string& snapshot_dir) {
  ExperimentConfig resolved = cfg;
  if (auto* c = std::get_if<CustomData>(&resolved.initial)) c->path = cfg.resolve(c->path);
  SimulationResult r;
  const StateVector s0 = initial_condition(g, resolved.initial);
  SnapshotSink sink;
  if (cfg.snapshot_every > 0 && !snapshot_dir.empty()) sink = {cfg.snapshot_every, snapshot_dir};
  r.trace = run(g, s0, cfg.time_step(), cfg.t_end, sink, &r.final_state);
  return r;
}

ResolventScan run_scan(const ExperimentConfig& cfg, const GeneratorMatrix& g, int threads) {
  auto s = scan(g, logspace(cfg.lambda_min, cfg.lambda_max, cfg.lambda_points), threads);
  s.tag = cfg.id;
  return s;
}

FullResult run_full(const ExperimentConfig& cfg, int threads) {
  FullResult r;
  r.hypothesis = run_check(cfg);
  const GeneratorMatrix g = build_generator(cfg);
  r.trace = run_simulation(cfg, g).trace;
  r.fit = fit_decay(r.trace, cfg.window_fraction);
  r.fit.tag = cfg.id;
  r.eigenvalues = spectrum(g);
  r.abscissa = spectral_abscissa(r.eigenvalues);
  r.scan = run_scan(cfg, g, threads);
  r.verdict = stability_verdict(r.hypothesis, r.fit, r.scan, r.abscissa);
  return r;
}

namespace {

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

}  // namespace

HypothesisReport write_check(const ExperimentConfig& cfg, const std::string& dir) {
  auto r = run_check(cfg);
  ensure_directory(dir);
  write_text_file(join(dir, "hypothesis.txt"), r.to_key_value());
  return r;
}

SimulationResult write_simulation(const ExperimentConfig& cfg, const std::string& dir) {
  ensure_directory(dir);
  const GeneratorMatrix g = build_generator(cfg);
  auto r = run_simulation(cfg, g, join(dir, "snapshots"));
  write_text_file(join(dir, "energy.csv"), r.trace.to_csv());
  write_text_file(join(dir, "final_state.csv"), state_to_csv(g, r.final_state));
  return r;
}

std::vector<std::complex<double>> write_spectrum(const ExperimentConfig& cfg,
                                                 const std::string& dir) {
  ensure_directory(dir);
  auto eigs = spectrum(build_generator(cfg));
  write_text_file(join(dir, "spectrum.csv"), spectrum_csv(eigs));
  return eigs;
}

ResolventScan write_resolvent(const ExperimentConfig& cfg, const std::string& dir,
                              int threads) {
  ensure_directory(dir);
  auto s = run_scan(cfg, build_generator(cfg), threads);
  write_text_file(join(dir, "resolvent.csv"), s.to_csv());
  return s;
}

FullResult write_verdict(const ExperimentConfig& cfg, const std::string& dir, int threads) {
  auto r = run_full(cfg, threads);
  ensure_directory(dir);
  write_text_file(join(dir, "config.toml"), dump_config(cfg));
  write_text_file(join(dir, "hypothesis.txt"), r.hypothesis.to_key_value());
  write_text_file(join(dir, "energy.csv"), r.trace.to_csv());
  write_text_file(join(dir, "fit.txt"), r.fit.to_key_value());
  write_text_file(join(dir, "spectrum.csv"), spectrum_csv(r.eigenvalues));
  write_text_file(join(dir, "resolvent.csv"), r.scan.to_csv());
  write_text_file(join(dir, "verdict.txt"), r.verdict.to_text());
  return r;
}

std::vector<std::string> demo_config_names() {
  return {"wd_internal", "sd_internal", "transmission_wd", "transmission_sd"};
}

bool DemoResult::all_stable() const {
  for (const auto& r : runs)
    if (!r.verdict.stable()) return false;
  return !runs.empty();
}

namespace {

std::string summary_csv(const std::vector<FullResult>& runs) {
  std::ostringstream o;
  o << "config,system,K,classification,M01,M02,M11,M12,N1,N2,hypothesis,tau,r_squared,"
       "spectral_abscissa,rate_ratio,resolvent_sup,bound_kappa,verdict\n";
  for (const auto& r : runs) {
    const auto& h = r.hypothesis;
    o << h.tag << ',' << to_string(h.system) << ',' << format_real(h.degeneracy.K) << ','
      << to_string(h.degeneracy.classification) << ',';
    if (auto* m = std::get_if<MConstants>(&h.constants))
      o << format_real(m->m01) << ',' << format_real(m->m02) << ',' << format_real(m->m11)
        << ',' << format_real(m->m12) << ",,";
    else {
      const auto& n = std::get<NConstants>(h.constants);
      o << ",,,," << format_real(n.n1) << ',' << format_real(n.n2);
    }
    o << ',' << (h.verdict ? "true" : "false") << ',' << format_real(r.fit.tau) << ','
      << format_real(r.fit.r_squared) << ',' << format_real(r.abscissa) << ','
      << format_real(r.verdict.rate_ratio) << ',' << format_real(r.scan.sup_norm) << ','
      << format_real(r.scan.bound_kappa) << ',' << to_string(r.verdict.verdict) << '\n';
  }
  return o.str();
}

std::string summary_text(const std::vector<FullResult>& runs) {
  std::ostringstream o;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %-12s %6s %-28s %10s %10s %10s %10s %-20s\n",
                "config", "system", "K", "constants", "tau", "abscissa", "ratio",
                "res_sup", "verdict");
  o << line;
  for (const auto& r : runs) {
    const auto& h = r.hypothesis;
    char consts[64];
    if (auto* m = std::get_if<MConstants>(&h.constants))
      std::snprintf(consts, sizeof consts, "M=%.3g/%.3g/%.3g/%.3g", m->m01, m->m02, m->m11,
                    m->m12);
    else {
      const auto& n = std::get<NConstants>(h.constants);
      std::snprintf(consts, sizeof consts, "N=%.6g/%.6g", n.n1, n.n2);
    }
    std::snprintf(line, sizeof line, "%-16s %-12s %6.3g %-28s %10.5g %10.5g %10.4g %10.4g %-20s\n",
                  h.tag.c_str(), to_string(h.system).c_str(), h.degeneracy.K, consts,
                  r.fit.tau, r.abscissa, r.verdict.rate_ratio, r.scan.sup_norm,
                  to_string(r.verdict.verdict).c_str());
    o << line;
  }
  o << "\ntau is the state-norm rate; energy decays like exp(-2 tau t).\n"
       "ratio = -abscissa / tau.\n";
  return o.str();
}

std::string plot_script(const std::vector<FullResult>& runs, const std::string& file,
                        const std::string& png, const std::string& setup,
                        const std::string& style) {
  std::ostringstream o;
  o << "set terminal pngcairo size 900,600\n"
    << "set output '" << png << "'\n"
    << "set datafile separator ','\n"
    << setup << "plot ";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& tag = runs[i].hypothesis.tag;
    o << (i ? ", \\\n     " : "") << "'" << tag << '/' << file << "' skip 1 " << style
      << " title '" << tag << "'";
  }
  o << '\n';
  return o.str();
}

}  // namespace

DemoResult run_demo(const std::string& config_dir, const std::string& out, int threads) {
  DemoResult d;
  ensure_directory(out);
  for (const auto& name : demo_config_names()) {
    const auto path = join(config_dir, name + ".toml");
    if (!fs::exists(path)) throw InputError("bundled config not found: " + path);
    const auto cfg = load_config(path);
    d.runs.push_back(write_verdict(cfg, join(out, cfg.id), threads));
  }
  d.summary_csv = summary_csv(d.runs);
  d.summary_text = summary_text(d.runs);
  write_text_file(join(out, "summary.csv"), d.summary_csv);
  write_text_file(join(out, "summary.txt"), d.summary_text);
  write_text_file(join(out, "energy.gp"),
                  plot_script(d.runs, "energy.csv", "energy.png",
                              "set logscale y\nset xlabel 't'\nset ylabel 'E(t)'\n",
                              "using 1:2 with lines"));
  write_text_file(join(out, "resolvent.gp"),
                  plot_script(d.runs, "resolvent.csv", "resolvent.png",
                              "set logscale xy\nset xlabel 'lambda'\n"
                              "set ylabel '||(i lambda - A)^{-1}||'\n",
                              "using 1:2 with linespoints"));
  write_text_file(join(out, "spectrum.gp"),
                  plot_script(d.runs, "spectrum.csv", "spectrum.png",
                              "set xlabel 'Re'\nset ylabel 'Im'\nset xrange [*:0.1]\n",
                              "using 1:2 with points pt 7 ps 0.4"));
  return d;
}

}  // namespace dwave
