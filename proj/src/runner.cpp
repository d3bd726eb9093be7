#include "kin/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kin/checkpoint.hpp"
#include "kin/errors.hpp"

namespace kin {

namespace {

std::string fmt_real(Real v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.21Lg", v);
  return buf;
}

}  // namespace

std::vector<Real> TimeSeriesTable::column_t() const {
  std::vector<Real> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.t);
  return out;
}

std::vector<Real> TimeSeriesTable::column_dist_sq() const {
  std::vector<Real> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.dist_sq);
  return out;
}

void write_csv(std::ostream& out, const TimeSeriesTable& table) {
  out << "t,mass,dist_sq,H,D,E,bound_value\n";
  for (const auto& r : table.rows) {
    out << fmt_real(r.t) << ',' << fmt_real(r.mass) << ',' << fmt_real(r.dist_sq) << ','
        << fmt_real(r.H) << ',';
    if (r.D.infinite)
      out << "inf";
    else
      out << fmt_real(r.D.value);
    out << ',' << fmt_real(r.E) << ',';
    if (r.has_bound)
      out << fmt_real(r.bound_value);
    else
      out << "nan";
    out << '\n';
  }
}

void write_csv(const std::string& path, const TimeSeriesTable& table) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  write_csv(out, table);
  if (!out) throw ConfigError("write failed for '" + path + "'");
}

TimeSeriesTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty csv '" + path + "'");
  if (line != "t,mass,dist_sq,H,D,E,bound_value")
    throw ConfigError("unexpected csv header in '" + path + "'");
  TimeSeriesTable table;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 7 columns");
    auto num = [&](const std::string& s) -> Real {
      if (s == "inf") return INFINITY;
      if (s == "nan") return NAN;
      return std::strtold(s.c_str(), nullptr);
    };
    diag::Record r;
    r.t = num(cells[0]);
    r.mass = num(cells[1]);
    r.dist_sq = num(cells[2]);
    r.H = num(cells[3]);
    r.D.value = num(cells[4]);
    r.D.infinite = std::isinf(r.D.value);
    r.E = num(cells[5]);
    r.bound_value = num(cells[6]);
    r.has_bound = !std::isnan(r.bound_value);
    if (!table.rows.empty() && !(r.t > table.rows.back().t))
      throw ConfigError(path + ": time column is not strictly increasing");
    table.rows.push_back(r);
  }
  return table;
}

std::optional<rates::RateBound> certificate_for(const SimConfig& cfg, const StateStats& stats,
                                                const InteractionModel& model) {
  if (cfg.theorem == "none") return std::nullopt;

  const bool want_type3 = cfg.theorem == "type3";
  const bool want_type1 = cfg.theorem == "type1";
  const TypeFlags flags = model.classify();

  auto type3_bound = [&]() {
    if (cfg.dim == 1)
      return rates::decay_bound_1d_type3(stats.delta, stats.M, stats.m_inf, cfg.c, model);
    return rates::decay_bound_3d_type3(stats.delta, stats.M, stats.m_inf, cfg.c, model);
  };
  auto type1_bound = [&]() {
    const auto floor = model.type_one_floor();
    if (!floor)
      throw NoCertificateError("no declared lower floor k >= k1 (sum)^alpha for this model");
    const Real kappa1 = model.kappa_bounds(0, stats.M).high;
    if (cfg.dim == 1)
      return rates::decay_bound_1d_type1(floor->alpha, stats.M, stats.m_inf, cfg.c, kappa1,
                                         floor->k1_inf);
    return rates::decay_bound_3d_type1(floor->alpha, stats.M, stats.m_inf, cfg.c, kappa1,
                                       floor->k1_inf);
  };

  if (want_type3) return type3_bound();
  if (want_type1) return type1_bound();
  // auto: bounded-below form first, degenerate floor as fallback.
  if (flags.type3 && stats.delta > 0) return type3_bound();
  return type1_bound();
}

namespace {

diag::Record make_record(const KineticState& state, const StateStats& stats,
                         const InteractionModel& model, Real eps,
                         const std::optional<rates::RateBound>& bound, Real dist0) {
  diag::Record r;
  r.t = state.t;
  Real mass = 0;
  for (const Field& f : state.species) mass += integrate(f);
  r.mass = mass;
  r.dist_sq = diag::dist_sq(state, stats.m_inf);
  r.H = diag::entropy_H(state, stats.m_inf);
  r.D = diag::entropy_dissipation(state, model);
  r.E = eps > 0 ? diag::lyapunov_E(state, stats.m_inf, eps) : r.H;
  if (bound) {
    r.has_bound = true;
    r.bound_value = bound->Lambda * std::exp(-2 * bound->lambda * state.t) * dist0;
  }
  return r;
}

}  // namespace

RunResult run_from(std::vector<Field> species, const SimConfig& cfg, Real t0) {
  const InteractionModel model = cfg.model.build(cfg.dim);
  auto [state, stats] = init_state(std::move(species), cfg.c);
  state.t = t0;

  if (model.classify().type2 && !(stats.delta > 0))
    throw ConfigError(
        "run: the rate is singular at the all-zero point (type 2) and the initial data touches "
        "zero; a positive lower bound is required");

  std::optional<rates::RateBound> bound = certificate_for(cfg, stats, model);
  Real eps = 0;
  if (cfg.eps_policy == "explicit")
    eps = cfg.eps;
  else if (bound)
    eps = bound->eps_star;

  const Real dt = cfg.dt();
  const long nsteps = cfg.steps();

  RunResult res;
  res.stats = stats;
  res.bound = bound;

  InvariantReport& inv = res.invariants;
  Real mass0 = 0;
  for (const Field& f : state.species) mass0 += integrate(f);
  inv.min_species = stats.delta;
  inv.max_species = stats.M;
  inv.mass_rel_drift = 0;
  inv.entropy_step_gain = -INFINITY;

  const Real dist0 = diag::dist_sq(state, stats.m_inf);
  res.table.rows.push_back(make_record(state, stats, model, eps, bound, dist0));

  Real H_prev = res.table.rows.front().H;
  for (long i = 0; i < nsteps; ++i) {
    strang_step(state, dt, model, cfg.picard_sweeps, cfg.workers);
    state.t = t0 + static_cast<Real>(i + 1) * dt;  // integer-scaled time, no drift

    Real mass = 0, lo = INFINITY, hi = -INFINITY;
    bool finite = true;
    for (const Field& f : state.species) {
      mass += integrate(f);
      lo = std::min(lo, min_value(f));
      hi = std::max(hi, max_value(f));
      finite = finite && all_finite(f);
    }
    if (!finite) throw RunAbort("run: non-finite density detected", i + 1);
    if (lo < 0) throw RunAbort("run: negative density detected", i + 1);
    inv.mass_rel_drift = std::max(inv.mass_rel_drift, std::fabs(mass - mass0) / std::fabs(mass0));
    inv.min_species = std::min(inv.min_species, lo);
    inv.max_species = std::max(inv.max_species, hi);

    const Real H = diag::entropy_H(state, stats.m_inf);
    inv.entropy_step_gain = std::max(inv.entropy_step_gain, (H - H_prev) / (1 + std::fabs(H_prev)));
    H_prev = H;

    if ((i + 1) % cfg.record_every == 0 || i + 1 == nsteps)
      res.table.rows.push_back(make_record(state, stats, model, eps, bound, dist0));
  }

  res.final_state = std::move(state);
  if (!cfg.checkpoint_path.empty())
    write_checkpoint(cfg.checkpoint_path, res.final_state, cfg.model.describe());
  if (!cfg.csv_path.empty()) write_csv(cfg.csv_path, res.table);
  return res;
}

RunResult run(const SimConfig& cfg) {
  if (cfg.initial.preset == "checkpoint") {
    Checkpoint ck = read_checkpoint(cfg.initial.path);
    if (ck.dim != cfg.dim || ck.n != cfg.n)
      throw ConfigError("checkpoint grid does not match [grid] section");
    if (std::fabs(ck.c - cfg.c) > 0)
      throw ConfigError("checkpoint wave speed differs from [time] c");
    return run_from(std::move(ck.species), cfg, ck.t);
  }
  Grid grid = Grid::make(cfg.dim, cfg.n);
  return run_from(build_initial(cfg.initial, grid), cfg);
}

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

VerifyReport verify(const SimConfig& cfg, RunResult* out_result) {
  RunResult res = run(cfg);
  VerifyReport rep;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    rep.checks.push_back({name, pass, detail});
  };
  std::ostringstream os;

  if (!res.bound) {
    add("certificate", false, "no certificate requested ([rates] theorem = none)");
  } else {
    const Real dist0 = res.table.rows.front().dist_sq;
    Real worst = 0;  // max of dist/bound - 1
    for (const auto& r : res.table.rows) {
      const Real budget = r.bound_value * (1 + 1e-6L);
      if (dist0 == 0) {
        if (r.dist_sq > 0) worst = INFINITY;
        continue;
      }
      worst = std::max(worst, r.dist_sq / budget - 1);
    }
    os.str("");
    os << "lambda=" << static_cast<double>(res.bound->lambda)
       << " Lambda=" << static_cast<double>(res.bound->Lambda)
       << " max dist/bound-1 = " << static_cast<double>(worst);
    add("certificate_inequality", worst <= 0, os.str());
  }

  os.str("");
  os << "max relative drift " << static_cast<double>(res.invariants.mass_rel_drift);
  add("mass_conservation", res.invariants.mass_rel_drift <= 1e-12L, os.str());

  const Real lo_ok = res.stats.delta - 1e-12L;
  const Real hi_ok = res.stats.M + 1e-12L;
  os.str("");
  os << "species range [" << static_cast<double>(res.invariants.min_species) << ", "
     << static_cast<double>(res.invariants.max_species) << "] within [delta, M] = ["
     << static_cast<double>(res.stats.delta) << ", " << static_cast<double>(res.stats.M) << "]";
  add("maximum_principle",
      res.invariants.min_species >= lo_ok && res.invariants.max_species <= hi_ok, os.str());

  os.str("");
  os << "max per-step gain " << static_cast<double>(res.invariants.entropy_step_gain);
  add("entropy_monotone", res.invariants.entropy_step_gain <= 1e-13L, os.str());

  if (res.bound) {
    const Real E0 = res.table.rows.front().E;
    Real worst = -INFINITY;
    bool ok = true;
    for (const auto& r : res.table.rows) {
      const Real budget = std::exp(-2 * res.bound->lambda * r.t) * E0 * (1 + 1e-6L);
      if (E0 == 0) {
        ok = ok && r.E <= 1e-30L;
        continue;
      }
      worst = std::max(worst, r.E / budget - 1);
      ok = ok && r.E <= budget;
    }
    os.str("");
    os << "max E/(e^{-2 lambda t} E0) - 1 = " << static_cast<double>(worst);
    add("lyapunov_decay", ok, os.str());
  }

  if (out_result) *out_result = std::move(res);
  return rep;
}

}  // namespace kin
