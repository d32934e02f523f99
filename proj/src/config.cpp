#include "dwave/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "dwave/errors.hpp"
#include "dwave/io.hpp"
#include "toml.hpp"

namespace dwave {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ConfigurationError(msg); }

void check_keys(const toml::table& t, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& [k, v] : t) {
    (void)v;
    if (!allowed.count(std::string(k.str())))
      bad("unknown key '" + std::string(k.str()) + "' in " + where);
  }
}

const toml::table* subtable(const toml::table& t, const std::string& key, bool required) {
  const auto* node = t.get(key);
  if (!node) {
    if (required) bad("missing section [" + key + "]");
    return nullptr;
  }
  const auto* tbl = node->as_table();
  if (!tbl) bad("'" + key + "' must be a table");
  return tbl;
}

double get_real(const toml::table& t, const std::string& key, const std::string& where,
                std::optional<double> fallback = std::nullopt) {
  const auto* node = t.get(key);
  if (!node) {
    if (fallback) return *fallback;
    bad("missing key '" + key + "' in " + where);
  }
  if (auto v = node->value<double>()) return *v;
  bad("'" + key + "' in " + where + " must be a number");
}

long get_int(const toml::table& t, const std::string& key, const std::string& where,
             std::optional<long> fallback = std::nullopt) {
  const auto* node = t.get(key);
  if (!node) {
    if (fallback) return *fallback;
    bad("missing key '" + key + "' in " + where);
  }
  if (auto v = node->as_integer()) return static_cast<long>(v->get());
  bad("'" + key + "' in " + where + " must be an integer");
}

bool get_bool(const toml::table& t, const std::string& key, const std::string& where,
              bool fallback) {
  const auto* node = t.get(key);
  if (!node) return fallback;
  if (auto v = node->as_boolean()) return v->get();
  bad("'" + key + "' in " + where + " must be true or false");
}

std::string get_string(const toml::table& t, const std::string& key,
                       const std::string& where,
                       std::optional<std::string> fallback = std::nullopt) {
  const auto* node = t.get(key);
  if (!node) {
    if (fallback) return *fallback;
    bad("missing key '" + key + "' in " + where);
  }
  if (auto v = node->as_string()) return v->get();
  bad("'" + key + "' in " + where + " must be a string");
}

CoefficientSpec parse_coefficient(const toml::table& root, const std::string& key) {
  const auto* t = subtable(root, key, true);
  check_keys(*t, {"powerlaw", "table"}, "[" + key + "]");
  const bool has_pl = t->contains("powerlaw"), has_tab = t->contains("table");
  if (has_pl == has_tab) bad("[" + key + "] needs exactly one of 'powerlaw' or 'table'");
  CoefficientSpec s;
  if (has_pl) {
    const auto* pl = subtable(*t, "powerlaw", true);
    check_keys(*pl, {"c", "k"}, key + ".powerlaw");
    s.kind = CoefficientSpec::Kind::PowerLaw;
    s.c = get_real(*pl, "c", key + ".powerlaw");
    s.k = get_real(*pl, "k", key + ".powerlaw");
  } else {
    s.kind = CoefficientSpec::Kind::Table;
    s.table = get_string(*t, "table", "[" + key + "]");
  }
  return s;
}

InitialKind parse_initial(const toml::table& root) {
  const auto* t = subtable(root, "initial", true);
  const std::string kind = get_string(*t, "kind", "[initial]");
  if (kind == "zero") {
    check_keys(*t, {"kind"}, "[initial]");
    return ZeroData{};
  }
  if (kind == "sine" || kind == "mode") {
    check_keys(*t, {"kind", "k"}, "[initial]");
    int k = static_cast<int>(get_int(*t, "k", "[initial]", 1));
    if (kind == "sine") return SineMode{k};
    return DiscreteMode{k};
  }
  if (kind == "gaussian") {
    check_keys(*t, {"kind", "center", "width"}, "[initial]");
    return GaussianPulse{get_real(*t, "center", "[initial]"),
                         get_real(*t, "width", "[initial]")};
  }
  if (kind == "custom") {
    check_keys(*t, {"kind", "path"}, "[initial]");
    return CustomData{get_string(*t, "path", "[initial]")};
  }
  bad("unknown initial kind '" + kind + "' (zero, sine, gaussian, mode, custom)");
}

std::string toml_real(double v) {
  std::string s = format_real(v);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string toml_string(const std::string& s) {
  std::ostringstream o;
  o << toml::value<std::string>(s);
  return o.str();
}

void dump_coefficient(std::ostringstream& o, const std::string& key,
                      const CoefficientSpec& s) {
  o << "\n[" << key << "]\n";
  if (s.kind == CoefficientSpec::Kind::PowerLaw)
    o << "powerlaw = { c = " << toml_real(s.c) << ", k = " << toml_real(s.k) << " }\n";
  else
    o << "table = " << toml_string(s.table) << '\n';
}

}  // namespace

std::string ExperimentConfig::resolve(const std::string& path) const {
  fs::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p.string();
  return (fs::path(base_dir) / p).lexically_normal().string();
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  return id == o.id && system == o.system && a == o.a && b == o.b &&
         damping == o.damping && transmission == o.transmission && n == o.n &&
         grading == o.grading && t_end == o.t_end && dt == o.dt &&
         window_fraction == o.window_fraction && lambda_min == o.lambda_min &&
         lambda_max == o.lambda_max && lambda_points == o.lambda_points &&
         initial == o.initial && output_dir == o.output_dir &&
         snapshot_every == o.snapshot_every;
}

ExperimentConfig parse_config(const std::string& text, const std::string& base_dir,
                              const std::string& default_id) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream o;
    o << "TOML syntax error: " << e.description() << " at line "
      << e.source().begin.line;
    bad(o.str());
  }
  check_keys(root, {"id", "system", "a", "b", "damping", "transmission", "mesh", "time",
                    "scan", "initial", "output"},
             "top level");
  ExperimentConfig c;
  c.base_dir = base_dir;
  c.id = get_string(root, "id", "top level", default_id);
  const std::string sys = get_string(root, "system", "top level");
  if (sys == "internal")
    c.system = SystemKind::InternalDamping;
  else if (sys == "transmission")
    c.system = SystemKind::Transmission;
  else
    bad("system must be 'internal' or 'transmission'");
  c.a = parse_coefficient(root, "a");
  c.b = parse_coefficient(root, "b");

  if (c.system == SystemKind::InternalDamping) {
    if (root.contains("transmission")) bad("[transmission] given for an internal system");
    const auto* d = subtable(root, "damping", true);
    check_keys(*d, {"enabled", "x1", "x2", "alpha1", "alpha2", "epsilon"}, "[damping]");
    c.damping.enabled = get_bool(*d, "enabled", "[damping]", true);
    c.damping.x1 = get_real(*d, "x1", "[damping]");
    c.damping.x2 = get_real(*d, "x2", "[damping]");
    c.damping.alpha1 = get_real(*d, "alpha1", "[damping]");
    c.damping.alpha2 = get_real(*d, "alpha2", "[damping]");
    c.damping.epsilon = get_real(*d, "epsilon", "[damping]");
  } else {
    if (root.contains("damping")) bad("[damping] given for a transmission system");
    const auto* t = subtable(root, "transmission", true);
    check_keys(*t, {"L", "n_right", "boundary_damping"}, "[transmission]");
    c.transmission.L = get_real(*t, "L", "[transmission]");
    c.transmission.n_right = static_cast<int>(get_int(*t, "n_right", "[transmission]"));
    c.transmission.boundary_damping =
        get_bool(*t, "boundary_damping", "[transmission]", true);
  }

  const auto* m = subtable(root, "mesh", true);
  check_keys(*m, {"n", "grading"}, "[mesh]");
  c.n = static_cast<int>(get_int(*m, "n", "[mesh]"));
  c.grading = get_real(*m, "grading", "[mesh]",
                       c.a.kind == CoefficientSpec::Kind::PowerLaw && c.a.k >= 1.0 ? 3.0
                                                                                   : 2.0);

  const auto* t = subtable(root, "time", true);
  check_keys(*t, {"t_end", "dt", "window_fraction"}, "[time]");
  c.t_end = get_real(*t, "t_end", "[time]");
  if (t->contains("dt")) c.dt = get_real(*t, "dt", "[time]");
  c.window_fraction = get_real(*t, "window_fraction", "[time]", 0.5);

  if (const auto* s = subtable(root, "scan", false)) {
    check_keys(*s, {"lambda_min", "lambda_max", "points"}, "[scan]");
    c.lambda_min = get_real(*s, "lambda_min", "[scan]", 0.1);
    c.lambda_max = get_real(*s, "lambda_max", "[scan]", 100.0);
    c.lambda_points = static_cast<int>(get_int(*s, "points", "[scan]", 60));
  }

  c.initial = parse_initial(root);

  c.output_dir = "out/" + c.id;
  if (const auto* o = subtable(root, "output", false)) {
    check_keys(*o, {"directory", "snapshot_every"}, "[output]");
    c.output_dir = get_string(*o, "directory", "[output]", c.output_dir);
    c.snapshot_every = static_cast<int>(get_int(*o, "snapshot_every", "[output]", 0));
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::path p(path);
  return parse_config(ss.str(), p.parent_path().string(), p.stem().string());
}

void validate(const ExperimentConfig& c) {
  if (c.id.empty()) bad("id must not be empty");
  for (char ch : c.id)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.'))
      bad("id may only contain letters, digits, '_', '-', '.'");
  auto check_coeff = [&](const CoefficientSpec& s, bool drift, const char* name) {
    if (s.kind == CoefficientSpec::Kind::Table) {
      if (s.table.empty()) bad(std::string(name) + ".table must not be empty");
      return;
    }
    if (!std::isfinite(s.c) || !std::isfinite(s.k)) bad(std::string(name) + " must be finite");
    if (drift ? s.c < 0.0 : s.c <= 0.0)
      bad(std::string(name) + ".powerlaw.c must be " + (drift ? ">= 0" : "> 0"));
    if (s.k < 0.0) bad(std::string(name) + ".powerlaw.k must be >= 0");
  };
  check_coeff(c.a, false, "a");
  check_coeff(c.b, true, "b");
  if (c.n < 16) bad("mesh.n must be >= 16");
  if (!(c.grading >= 1.0 && c.grading <= 4.0)) bad("mesh.grading must lie in [1, 4]");
  if (c.system == SystemKind::InternalDamping) {
    const auto& d = c.damping;
    DampingProfile{d.x1, d.x2, d.alpha1, d.alpha2}.validate();
    if (!(d.epsilon > 0.0 && d.epsilon < (d.x2 - d.x1) / 4.0))
      bad("damping.epsilon must lie in (0, (x2 - x1)/4)");
  } else {
    if (!(c.transmission.L > 1.0) || !std::isfinite(c.transmission.L))
      bad("transmission.L must be > 1");
    if (c.transmission.n_right < 1) bad("transmission.n_right must be >= 1");
  }
  if (!(c.t_end > 0.0) || !std::isfinite(c.t_end)) bad("time.t_end must be > 0");
  if (c.dt && !(*c.dt > 0.0 && *c.dt <= c.t_end)) bad("time.dt must lie in (0, t_end]");
  if (!(c.window_fraction > 0.0 && c.window_fraction <= 1.0))
    bad("time.window_fraction must lie in (0, 1]");
  if (!(c.lambda_min > 0.0 && c.lambda_max >= c.lambda_min && std::isfinite(c.lambda_max)))
    bad("scan needs 0 < lambda_min <= lambda_max");
  if (c.lambda_points < 1) bad("scan.points must be >= 1");
  const double right = c.system == SystemKind::Transmission ? c.transmission.L : 1.0;
  if (auto* s = std::get_if<SineMode>(&c.initial); s && s->k < 1) bad("initial.k must be >= 1");
  if (auto* s = std::get_if<DiscreteMode>(&c.initial); s && s->k < 1)
    bad("initial.k must be >= 1");
  if (auto* g = std::get_if<GaussianPulse>(&c.initial)) {
    if (!(g->width > 0.0)) bad("initial.width must be > 0");
    if (!(g->center > 0.0 && g->center < right)) bad("initial.center must lie inside the domain");
  }
  if (auto* p = std::get_if<CustomData>(&c.initial); p && p->path.empty())
    bad("initial.path must not be empty");
  if (c.output_dir.empty()) bad("output.directory must not be empty");
  if (c.snapshot_every < 0) bad("output.snapshot_every must be >= 0");
}

CoefficientProfile make_profile(const ExperimentConfig& cfg, const CoefficientSpec& spec,
                                CoefficientRole role) {
  if (spec.kind == CoefficientSpec::Kind::Table)
    return CoefficientProfile::from_csv(cfg.resolve(spec.table), role);
  if (role == CoefficientRole::Drift && spec.c == 0.0) return CoefficientProfile::zero_drift();
  return CoefficientProfile::power_law(spec.c, spec.k, role);
}

std::string dump_config(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "id = " << toml_string(c.id) << '\n';
  o << "system = \"" << (c.system == SystemKind::InternalDamping ? "internal" : "transmission")
    << "\"\n";
  dump_coefficient(o, "a", c.a);
  dump_coefficient(o, "b", c.b);
  if (c.system == SystemKind::InternalDamping) {
    const auto& d = c.damping;
    o << "\n[damping]\n";
    o << "enabled = " << (d.enabled ? "true" : "false") << '\n';
    o << "x1 = " << toml_real(d.x1) << '\n';
    o << "x2 = " << toml_real(d.x2) << '\n';
    o << "alpha1 = " << toml_real(d.alpha1) << '\n';
    o << "alpha2 = " << toml_real(d.alpha2) << '\n';
    o << "epsilon = " << toml_real(d.epsilon) << '\n';
  } else {
    const auto& t = c.transmission;
    o << "\n[transmission]\n";
    o << "L = " << toml_real(t.L) << '\n';
    o << "n_right = " << t.n_right << '\n';
    o << "boundary_damping = " << (t.boundary_damping ? "true" : "false") << '\n';
  }
  o << "\n[mesh]\nn = " << c.n << "\ngrading = " << toml_real(c.grading) << '\n';
  o << "\n[time]\nt_end = " << toml_real(c.t_end) << '\n';
  if (c.dt) o << "dt = " << toml_real(*c.dt) << '\n';
  o << "window_fraction = " << toml_real(c.window_fraction) << '\n';
  o << "\n[scan]\nlambda_min = " << toml_real(c.lambda_min)
    << "\nlambda_max = " << toml_real(c.lambda_max) << "\npoints = " << c.lambda_points
    << '\n';
  o << "\n[initial]\n";
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ZeroData>)
          o << "kind = \"zero\"\n";
        else if constexpr (std::is_same_v<K, SineMode>)
          o << "kind = \"sine\"\nk = " << k.k << '\n';
        else if constexpr (std::is_same_v<K, DiscreteMode>)
          o << "kind = \"mode\"\nk = " << k.k << '\n';
        else if constexpr (std::is_same_v<K, GaussianPulse>)
          o << "kind = \"gaussian\"\ncenter = " << toml_real(k.center)
            << "\nwidth = " << toml_real(k.width) << '\n';
        else
          o << "kind = \"custom\"\npath = " << toml_string(k.path) << '\n';
      },
      c.initial);
  o << "\n[output]\ndirectory = " << toml_string(c.output_dir)
    << "\nsnapshot_every = " << c.snapshot_every << '\n';
  return o.str();
}

}  // namespace dwave
