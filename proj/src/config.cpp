#include "kin/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "kin/checkpoint.hpp"
#include "kin/errors.hpp"

namespace kin {

namespace {

constexpr Real kTwoPi = 2 * std::numbers::pi_v<Real>;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

Real parse_real(const std::string& v, const std::string& ctx) {
  try {
    std::size_t pos = 0;
    const Real r = std::stold(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw ConfigError(ctx + ": expected a number, got '" + v + "'");
  }
}

long parse_long(const std::string& v, const std::string& ctx) {
  try {
    std::size_t pos = 0;
    const long r = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw ConfigError(ctx + ": expected an integer, got '" + v + "'");
  }
}

std::vector<Real> parse_list(const std::string& v, const std::string& ctx) {
  std::vector<Real> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_real(item, ctx));
  }
  if (out.empty()) throw ConfigError(ctx + ": expected a comma-separated list");
  return out;
}

}  // namespace

InteractionModel ModelSpec::build(int dim) const {
  if (kind == "constant") return InteractionModel::constant(dim, k0);
  if (kind == "carleman") return InteractionModel::carleman(dim);
  if (kind == "power_law") return InteractionModel::power_law(dim, k1, alpha);
  throw ConfigError("model: unknown kind '" + kind + "' (constant|carleman|power_law)");
}

std::string ModelSpec::describe() const { return build(1).describe(); }

Real InitialSpec::min_possible() const {
  if (preset == "equilibrium") return m;
  if (preset == "sine") return m - std::fabs(amp);
  if (preset == "random_band") return std::max<Real>(0, m - std::fabs(amp));
  if (preset == "blocks") {
    Real lo = levels.empty() ? Real(0) : levels[0];
    for (Real v : levels) lo = std::min(lo, v);
    return lo;
  }
  return 0;  // checkpoint: unknown until loaded
}

Real SimConfig::dt() const {
  if (dt_explicit) return *dt_explicit;
  return 2 * static_cast<Real>(cfl_cells) / (static_cast<Real>(n) * c);
}

long SimConfig::steps() const {
  const Real s = t_end / dt();
  const Real r = std::round(s);
  if (std::fabs(s - r) > 1e-9L * std::max<Real>(1, s))
    throw ConfigError("time: t_end must be an integer multiple of dt (integer-cell transport)");
  return static_cast<long>(r);
}

namespace {

struct RawEntry {
  std::string value;
  int line;
};

using Section = std::map<std::string, RawEntry>;

void reject_unknown(const std::map<std::string, Section>& sections,
                    const std::map<std::string, std::set<std::string>>& known,
                    const std::string& origin) {
  for (const auto& [sec, entries] : sections) {
    auto it = known.find(sec);
    if (it == known.end())
      throw ConfigError(origin + ": unknown section [" + sec + "]");
    for (const auto& [key, entry] : entries)
      if (!it->second.count(key))
        throw ConfigError(origin + ":" + std::to_string(entry.line) + ": unknown key '" + key +
                          "' in [" + sec + "]");
  }
}

}  // namespace

SimConfig parse_config_text(const std::string& text, const std::string& origin) {
  std::map<std::string, Section> sections;
  std::string current;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
      current = trim(line.substr(1, line.size() - 2));
      if (current.empty())
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    if (current.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value");
    auto [it, inserted] = sections[current].emplace(key, RawEntry{value, lineno});
    if (!inserted)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }

  static const std::map<std::string, std::set<std::string>> known = {
      {"grid", {"dim", "n"}},
      {"model", {"kind", "k0", "alpha", "k1"}},
      {"initial", {"preset", "m", "amp", "mode", "modes", "seed", "levels", "path"}},
      {"time", {"c", "dt", "cfl_cells", "t_end", "record_every", "picard_sweeps"}},
      {"rates", {"theorem", "eps_policy", "eps"}},
      {"output", {"csv", "checkpoint", "certificate"}},
  };
  reject_unknown(sections, known, origin);

  SimConfig cfg;
  auto get = [&](const std::string& sec, const std::string& key) -> const RawEntry* {
    auto s = sections.find(sec);
    if (s == sections.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  };
  auto ctx = [&](const std::string& sec, const std::string& key) {
    return origin + ": [" + sec + "] " + key;
  };

  if (const auto* e = get("grid", "dim")) cfg.dim = static_cast<int>(parse_long(e->value, ctx("grid", "dim")));
  if (const auto* e = get("grid", "n")) cfg.n = static_cast<int>(parse_long(e->value, ctx("grid", "n")));

  if (const auto* e = get("model", "kind")) cfg.model.kind = e->value;
  if (const auto* e = get("model", "k0")) cfg.model.k0 = parse_real(e->value, ctx("model", "k0"));
  if (const auto* e = get("model", "alpha")) cfg.model.alpha = parse_real(e->value, ctx("model", "alpha"));
  if (const auto* e = get("model", "k1")) cfg.model.k1 = parse_real(e->value, ctx("model", "k1"));

  if (const auto* e = get("initial", "preset")) cfg.initial.preset = e->value;
  if (const auto* e = get("initial", "m")) cfg.initial.m = parse_real(e->value, ctx("initial", "m"));
  if (const auto* e = get("initial", "amp")) cfg.initial.amp = parse_real(e->value, ctx("initial", "amp"));
  if (const auto* e = get("initial", "mode")) cfg.initial.mode = static_cast<int>(parse_long(e->value, ctx("initial", "mode")));
  if (const auto* e = get("initial", "modes")) cfg.initial.modes = static_cast<int>(parse_long(e->value, ctx("initial", "modes")));
  if (const auto* e = get("initial", "seed")) cfg.initial.seed = static_cast<std::uint64_t>(std::stoull(e->value));
  if (const auto* e = get("initial", "levels")) cfg.initial.levels = parse_list(e->value, ctx("initial", "levels"));
  if (const auto* e = get("initial", "path")) cfg.initial.path = e->value;

  if (const auto* e = get("time", "c")) cfg.c = parse_real(e->value, ctx("time", "c"));
  if (const auto* e = get("time", "dt")) cfg.dt_explicit = parse_real(e->value, ctx("time", "dt"));
  if (const auto* e = get("time", "cfl_cells")) cfg.cfl_cells = static_cast<int>(parse_long(e->value, ctx("time", "cfl_cells")));
  if (const auto* e = get("time", "t_end")) cfg.t_end = parse_real(e->value, ctx("time", "t_end"));
  if (const auto* e = get("time", "record_every")) cfg.record_every = parse_long(e->value, ctx("time", "record_every"));
  if (const auto* e = get("time", "picard_sweeps")) cfg.picard_sweeps = static_cast<int>(parse_long(e->value, ctx("time", "picard_sweeps")));

  if (const auto* e = get("rates", "theorem")) cfg.theorem = e->value;
  if (const auto* e = get("rates", "eps_policy")) cfg.eps_policy = e->value;
  if (const auto* e = get("rates", "eps")) cfg.eps = parse_real(e->value, ctx("rates", "eps"));

  if (const auto* e = get("output", "csv")) cfg.csv_path = e->value;
  if (const auto* e = get("output", "checkpoint")) cfg.checkpoint_path = e->value;
  if (const auto* e = get("output", "certificate")) cfg.certificate_path = e->value;

  validate(cfg);
  return cfg;
}

SimConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

void validate(const SimConfig& cfg) {
  if (cfg.dim != 1 && cfg.dim != 3) throw ConfigError("grid: dim must be 1 or 3");
  if (cfg.n < 4) throw ConfigError("grid: n must be at least 4");
  if (!(cfg.c > 0)) throw ConfigError("time: c must be positive");
  if (!(cfg.t_end > 0)) throw ConfigError("time: t_end must be positive");
  if (cfg.record_every < 1) throw ConfigError("time: record_every must be >= 1");
  if (cfg.picard_sweeps < 0) throw ConfigError("time: picard_sweeps must be >= 0");
  if (cfg.dt_explicit && cfg.cfl_cells != 1)
    throw ConfigError("time: give either dt or cfl_cells, not both");
  if (!cfg.dt_explicit && cfg.cfl_cells < 1)
    throw ConfigError("time: cfl_cells must be a positive integer");

  if (cfg.dt_explicit) {
    const Real ratio = cfg.c * (*cfg.dt_explicit) / 2 * static_cast<Real>(cfg.n);
    if (std::fabs(ratio - std::round(ratio)) > 1e-9L * std::max<Real>(1, ratio))
      throw ConfigError(
          "time: dt violates the integer-cell constraint; need dt = 2*r*h/c for integer r "
          "(transport must be a whole-cell shift)");
    if (!(*cfg.dt_explicit > 0)) throw ConfigError("time: dt must be positive");
  }

  const std::set<std::string> kinds = {"constant", "carleman", "power_law"};
  if (!kinds.count(cfg.model.kind))
    throw ConfigError("model: unknown kind '" + cfg.model.kind + "'");
  if (cfg.model.kind == "constant" && cfg.model.k0 < 0)
    throw ConfigError("model: k0 must be nonnegative");
  if (cfg.model.kind == "power_law" && !(cfg.model.k1 > 0))
    throw ConfigError("model: power_law needs k1 > 0");

  const std::set<std::string> presets = {"equilibrium", "sine", "random_band", "blocks",
                                         "checkpoint"};
  if (!presets.count(cfg.initial.preset))
    throw ConfigError("initial: unknown preset '" + cfg.initial.preset + "'");
  if (cfg.initial.preset == "checkpoint" && cfg.initial.path.empty())
    throw ConfigError("initial: preset checkpoint needs a path");
  if (cfg.initial.preset == "blocks" && cfg.initial.levels.empty())
    throw ConfigError("initial: preset blocks needs levels");
  if (cfg.initial.preset != "checkpoint") {
    if (!(cfg.initial.m > 0)) throw ConfigError("initial: m must be positive");
    if (cfg.initial.preset == "sine" && cfg.initial.m - std::fabs(cfg.initial.amp) < 0)
      throw ConfigError("initial: sine amplitude produces negative data (amp > m)");
    if (cfg.initial.preset == "blocks")
      for (Real v : cfg.initial.levels)
        if (v < 0) throw ConfigError("initial: blocks levels must be nonnegative");
    // Singular-at-zero rates need data bounded away from zero.
    const TypeFlags flags = cfg.model.build(cfg.dim).classify();
    if (flags.type2 && !(cfg.initial.min_possible() > 0))
      throw ConfigError(
          "initial: the rate is singular at zero (type 2); initial data must have a positive "
          "lower bound, but preset '" +
          cfg.initial.preset + "' can reach 0");
  }

  const std::set<std::string> theorems = {"auto", "type1", "type3", "none"};
  if (!theorems.count(cfg.theorem))
    throw ConfigError("rates: theorem must be auto|type1|type3|none");
  if (cfg.eps_policy != "auto" && cfg.eps_policy != "explicit")
    throw ConfigError("rates: eps_policy must be auto|explicit");
  if (cfg.eps_policy == "explicit" && cfg.eps < 0)
    throw ConfigError("rates: explicit eps must be nonnegative");
  if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
}

void apply_override(SimConfig& cfg, const std::string& dotted_key, const std::string& value) {
  const auto dot = dotted_key.find('.');
  if (dot == std::string::npos)
    throw ConfigError("override: expected section.key, got '" + dotted_key + "'");
  const std::string sec = dotted_key.substr(0, dot);
  const std::string key = dotted_key.substr(dot + 1);
  const std::string ctx = "override " + dotted_key;

  if (sec == "grid" && key == "n") cfg.n = static_cast<int>(parse_long(value, ctx));
  else if (sec == "grid" && key == "dim") cfg.dim = static_cast<int>(parse_long(value, ctx));
  else if (sec == "model" && key == "kind") cfg.model.kind = value;
  else if (sec == "model" && key == "k0") cfg.model.k0 = parse_real(value, ctx);
  else if (sec == "model" && key == "alpha") cfg.model.alpha = parse_real(value, ctx);
  else if (sec == "model" && key == "k1") cfg.model.k1 = parse_real(value, ctx);
  else if (sec == "initial" && key == "m") cfg.initial.m = parse_real(value, ctx);
  else if (sec == "initial" && key == "amp") cfg.initial.amp = parse_real(value, ctx);
  else if (sec == "initial" && key == "mode") cfg.initial.mode = static_cast<int>(parse_long(value, ctx));
  else if (sec == "initial" && key == "modes") cfg.initial.modes = static_cast<int>(parse_long(value, ctx));
  else if (sec == "initial" && key == "seed") cfg.initial.seed = static_cast<std::uint64_t>(std::stoull(value));
  else if (sec == "time" && key == "c") cfg.c = parse_real(value, ctx);
  else if (sec == "time" && key == "t_end") cfg.t_end = parse_real(value, ctx);
  else if (sec == "time" && key == "cfl_cells") cfg.cfl_cells = static_cast<int>(parse_long(value, ctx));
  else if (sec == "time" && key == "record_every") cfg.record_every = parse_long(value, ctx);
  else throw ConfigError("override: unsupported key '" + dotted_key + "'");
}

namespace {

// Band-limited noise: a few random waves, sup-normalized to amp, clamped at 0.
Field random_band_field(const Grid& g, Real m, Real amp, int modes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_int_distribution<int> pick(-modes, modes);

  struct Wave {
    long k[3];
    Real a, b;
  };
  std::vector<Wave> waves;
  const int count = std::max(1, modes) * g.dim;
  for (int w = 0; w < count; ++w) {
    Wave wave{};
    bool zero = true;
    while (zero) {
      for (int d = 0; d < g.dim; ++d) {
        wave.k[d] = pick(rng);
        if (wave.k[d] != 0) zero = false;
      }
    }
    wave.a = static_cast<Real>(coeff(rng));
    wave.b = static_cast<Real>(coeff(rng));
    waves.push_back(wave);
  }

  Field f = Field::zeros(g);
  const int n = g.n;
  auto eval = [&](Real x1, Real x2, Real x3) {
    Real s = 0;
    for (const Wave& w : waves) {
      const Real ph = kTwoPi * (w.k[0] * x1 + w.k[1] * x2 + w.k[2] * x3);
      s += w.a * std::cos(ph) + w.b * std::sin(ph);
    }
    return s;
  };
  Real sup = 0;
  if (g.dim == 1) {
    for (long i = 0; i < n; ++i) {
      f.at(i) = eval(g.center(i), 0, 0);
      sup = std::max(sup, std::fabs(f.at(i)));
    }
  } else {
    for (long i1 = 0; i1 < n; ++i1)
      for (long i2 = 0; i2 < n; ++i2)
        for (long i3 = 0; i3 < n; ++i3) {
          Real& v = f.at(i1, i2, i3);
          v = eval(g.center(i1), g.center(i2), g.center(i3));
          sup = std::max(sup, std::fabs(v));
        }
  }
  const Real scale = sup > 0 ? amp / sup : Real(0);
  for (Real& v : f.values) v = std::max<Real>(0, m + scale * v);
  return f;
}

}  // namespace

std::vector<Field> build_initial(const InitialSpec& spec, const Grid& grid) {
  const std::size_t count = grid.dim == 1 ? 2 : 6;
  std::vector<Field> out;
  out.reserve(count);

  if (spec.preset == "equilibrium") {
    for (std::size_t s = 0; s < count; ++s) out.push_back(Field::constant(grid, spec.m));
    return out;
  }

  if (spec.preset == "sine") {
    if (spec.m - std::fabs(spec.amp) < 0)
      throw ConfigError("initial: sine amplitude produces negative data");
    for (std::size_t s = 0; s < count; ++s) out.push_back(Field::zeros(grid));
    const int n = grid.n;
    const Real k = static_cast<Real>(spec.mode);
    if (grid.dim == 1) {
      for (long i = 0; i < n; ++i) {
        const Real w = spec.amp * std::sin(kTwoPi * k * grid.center(i));
        out[0].at(i) = spec.m + w;
        out[1].at(i) = spec.m - w;
      }
    } else {
      for (long i1 = 0; i1 < n; ++i1)
        for (long i2 = 0; i2 < n; ++i2)
          for (long i3 = 0; i3 < n; ++i3) {
            const Real x[3] = {grid.center(i1), grid.center(i2), grid.center(i3)};
            for (int a = 0; a < 3; ++a) {
              const Real w = spec.amp * std::sin(kTwoPi * k * x[a]);
              out[static_cast<std::size_t>(a)].at(i1, i2, i3) = spec.m + w;
              out[static_cast<std::size_t>(3 + a)].at(i1, i2, i3) = spec.m - w;
            }
          }
    }
    return out;
  }

  if (spec.preset == "random_band") {
    for (std::size_t s = 0; s < count; ++s)
      out.push_back(random_band_field(grid, spec.m, std::fabs(spec.amp), spec.modes,
                                      spec.seed + 0x9E3779B97F4A7C15ull * (s + 1)));
    return out;
  }

  if (spec.preset == "blocks") {
    for (Real v : spec.levels)
      if (v < 0) throw ConfigError("initial: blocks levels must be nonnegative");
    const int n = grid.n;
    const std::size_t nb = spec.levels.size();
    auto level_at = [&](long i, bool reversed) {
      std::size_t b = static_cast<std::size_t>(i) * nb / static_cast<std::size_t>(n);
      if (b >= nb) b = nb - 1;
      return spec.levels[reversed ? nb - 1 - b : b];
    };
    for (std::size_t s = 0; s < count; ++s) out.push_back(Field::zeros(grid));
    if (grid.dim == 1) {
      for (long i = 0; i < n; ++i) {
        out[0].at(i) = level_at(i, false);
        out[1].at(i) = level_at(i, true);
      }
    } else {
      for (long i1 = 0; i1 < n; ++i1)
        for (long i2 = 0; i2 < n; ++i2)
          for (long i3 = 0; i3 < n; ++i3) {
            const long ix[3] = {i1, i2, i3};
            for (int a = 0; a < 3; ++a) {
              out[static_cast<std::size_t>(a)].at(i1, i2, i3) = level_at(ix[a], false);
              out[static_cast<std::size_t>(3 + a)].at(i1, i2, i3) = level_at(ix[a], true);
            }
          }
    }
    return out;
  }

  if (spec.preset == "checkpoint") {
    Checkpoint ck = read_checkpoint(spec.path);
    return std::move(ck.species);
  }

  throw ConfigError("initial: unknown preset '" + spec.preset + "'");
}

}  // namespace kin
