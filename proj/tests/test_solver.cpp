#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kin/config.hpp"
#include "kin/diagnostics.hpp"
#include "kin/errors.hpp"
#include "kin/runner.hpp"
#include "kin/solver.hpp"
#include "oracles.hpp"

using namespace kin;

namespace {
constexpr Real kTwoPi = 2 * std::numbers::pi_v<Real>;

KineticState sine_state(int n, Real m, Real amp, Real c = 1) {
  InitialSpec spec;
  spec.preset = "sine";
  spec.m = m;
  spec.amp = amp;
  return init_state(build_initial(spec, Grid::make(1, n)), c).first;
}
}  // namespace

TEST_SUITE("solver") {

TEST_CASE("init_state: stats of simple data") {
  Grid g = Grid::make(1, 16);
  auto [st, stats] = init_state({Field::constant(g, 1), Field::constant(g, 1)}, 1);
  CHECK(stats.m_inf == doctest::Approx(1.0).epsilon(1e-18));
  CHECK(stats.M == 1);
  CHECK(stats.delta == 1);
  CHECK(st.dim() == 1);
}

TEST_CASE("init_state: sine data hits the analytic extremes") {
  // n = 66 puts cell centers exactly on the crests of the unit-period sine.
  Grid g = Grid::make(1, 66);
  InitialSpec spec;
  spec.preset = "sine";
  spec.m = 1;
  spec.amp = 0.5L;
  auto [st, stats] = init_state(build_initial(spec, g), 1);
  (void)st;
  CHECK(std::fabs(stats.m_inf - 1) < 1e-15L);
  CHECK(std::fabs(stats.M - 1.5L) < 1e-12L);
  CHECK(std::fabs(stats.delta - 0.5L) < 1e-12L);
}

TEST_CASE("init_state: 3D equilibrium has m_inf = mass/6") {
  Grid g = Grid::make(3, 4);
  std::vector<Field> sp(6, Field::constant(g, 1));
  auto [st, stats] = init_state(std::move(sp), 1);
  (void)st;
  CHECK(stats.m_inf == doctest::Approx(1.0).epsilon(1e-18));
}

TEST_CASE("init_state rejects bad input") {
  Grid g = Grid::make(1, 8);
  Field neg = Field::constant(g, -0.5L);
  CHECK_THROWS_AS(init_state({neg, neg}, 1), ConfigError);
  CHECK_THROWS_AS(init_state({Field::constant(g, 1)}, 1), ConfigError);
  CHECK_THROWS_AS(
      init_state({Field::constant(g, 1), Field::constant(Grid::make(1, 16), 1)}, 1),
      ConfigError);
  CHECK_THROWS_AS(init_state({Field::constant(g, 1), Field::constant(g, 1)}, 0), ConfigError);
}

TEST_CASE("transport: dt = 0 is the identity") {
  auto st = sine_state(8, 1, 0.5L);
  auto before = st.species[0].values;
  transport_step(st, 0);
  CHECK(st.species[0].values == before);
}

TEST_CASE("transport: one-cell rotation at n=8, dt=1/8") {
  Grid g = Grid::make(1, 8);
  Field u = Field::zeros(g), v = Field::zeros(g);
  for (long i = 0; i < 8; ++i) {
    u.at(i) = static_cast<Real>(i);
    v.at(i) = static_cast<Real>(i);
  }
  auto [st, stats] = init_state({u, v}, 1);
  (void)stats;
  transport_step(st, Real(1) / 8);
  for (long i = 0; i < 8; ++i) {
    CHECK(st.species[0].at(i) == static_cast<Real>((i + 7) % 8));  // right by one
    CHECK(st.species[1].at(i) == static_cast<Real>((i + 1) % 8));  // left by one
  }
}

TEST_CASE("transport: a full period returns every species bit-exactly") {
  std::mt19937_64 rng(3);
  Grid g = Grid::make(1, 16);
  auto st = oracle::random_state(g, rng, 0.1L, 2);
  auto u0 = st.species[0].values, v0 = st.species[1].values;
  transport_step(st, 1);  // c = 1, distance = n cells
  CHECK(st.species[0].values == u0);
  CHECK(st.species[1].values == v0);
}

TEST_CASE("transport: non-integer CFL is rejected") {
  auto st = sine_state(8, 1, 0.5L);
  CHECK_THROWS_AS(transport_step(st, Real(1) / 12), ConfigError);
}

TEST_CASE("transport reversibility: flipping c undoes the step bit-exactly") {
  std::mt19937_64 rng(9);
  for (int dim : {1, 3}) {
    Grid g = Grid::make(dim, 8);
    auto st = oracle::random_state(g, rng, 0.1L, 2);
    auto copy = st.species;
    transport_step(st, Real(3) / 8);
    st.c = -st.c;
    transport_step(st, Real(3) / 8);
    for (std::size_t s = 0; s < st.species.size(); ++s)
      CHECK(st.species[s].values == copy[s].values);
  }
}

TEST_CASE("relaxation: local equilibrium is a bit-exact fixed point") {
  Grid g = Grid::make(1, 8);
  Field w = Field::constant(g, 0.7L);
  auto [st, stats] = init_state({w, w}, 1);
  (void)stats;
  auto model = InteractionModel::carleman(1);
  relaxation_step(st, 0.25L, model);
  CHECK(st.species[0].values == w.values);
  CHECK(st.species[1].values == w.values);
}

TEST_CASE("relaxation: exact exponential for constant rate") {
  Grid g = Grid::make(1, 8);
  auto [st, stats] = init_state({Field::constant(g, 2), Field::constant(g, 0)}, 1);
  (void)stats;
  relaxation_step(st, 0.5L, InteractionModel::constant(1, 1));
  const Real j = 2 * std::exp(Real(-1));  // j' = -2j, j(0) = 2
  CHECK(std::fabs(st.species[0].at(0) - (2 + j) / 2) < 1e-18L);
  CHECK(std::fabs(st.species[1].at(0) - (2 - j) / 2) < 1e-18L);
  CHECK(st.species[0].at(0) == doctest::Approx(1.36788).epsilon(1e-5));
  CHECK(st.species[1].at(0) == doctest::Approx(0.63212).epsilon(1e-5));
}

TEST_CASE("relaxation: 3D long-time limit is rho/6 per cell") {
  std::mt19937_64 rng(11);
  Grid g = Grid::make(3, 4);
  auto st = oracle::random_state(g, rng, 0.2L, 2);
  Field rho = st.rho();
  relaxation_step(st, 1e6L, InteractionModel::constant(3, 1));
  for (std::size_t i = 0; i < rho.values.size(); ++i)
    for (int s = 0; s < 6; ++s)
      CHECK(std::fabs(st.species[static_cast<std::size_t>(s)].values[i] - rho.values[i] / 6) <
            1e-17L);
}

TEST_CASE("relaxation preserves rho per cell") {
  std::mt19937_64 rng(13);
  for (int dim : {1, 3}) {
    Grid g = Grid::make(dim, dim == 1 ? 32 : 4);
    auto st = oracle::random_state(g, rng, 0.1L, 2);
    Field before = st.rho();
    relaxation_step(st, 0.3L, InteractionModel::carleman(dim));
    Field after = st.rho();
    for (std::size_t i = 0; i < before.values.size(); ++i)
      CHECK(std::fabs(after.values[i] - before.values[i]) <= 1e-18L * before.values[i]);
  }
}

TEST_CASE("strang: zero rate reduces to pure transport") {
  auto st = sine_state(16, 1, 0.5L);
  auto ref = st;
  strang_step(st, Real(2) / 16, InteractionModel::constant(1, 0));
  transport_step(ref, Real(2) / 16);
  CHECK(st.species[0].values == ref.species[0].values);
  CHECK(st.species[1].values == ref.species[1].values);
}

TEST_CASE("strang: global equilibrium is a bit-exact fixed point") {
  Grid g = Grid::make(1, 16);
  Field w = Field::constant(g, 1);
  auto [st, stats] = init_state({w, w}, 1);
  (void)stats;
  for (int i = 0; i < 10; ++i) strang_step(st, Real(2) / 16, InteractionModel::carleman(1));
  CHECK(st.species[0].values == w.values);
  CHECK(st.species[1].values == w.values);
}

TEST_CASE("strang is second order: Richardson ratio near 4") {
  // Richardson on dt, dt/2, dt/4 with exact transport and exact relaxation:
  // the only error is the splitting commutator.
  const int n = 128;
  auto model = InteractionModel::carleman(1);
  auto run_with = [&](int cfl) {
    auto st = sine_state(n, 1, 0.4L);
    const Real dt = 2 * static_cast<Real>(cfl) / n;
    const long steps = static_cast<long>(std::llround(0.5L / dt));
    for (long i = 0; i < steps; ++i) strang_step(st, dt, model);
    return st;
  };
  auto s1 = run_with(4), s2 = run_with(2), s3 = run_with(1);
  Real d12 = 0, d23 = 0;
  for (long i = 0; i < n; ++i) {
    d12 = std::max(d12, std::fabs(s1.species[0].at(i) - s2.species[0].at(i)));
    d23 = std::max(d23, std::fabs(s2.species[0].at(i) - s3.species[0].at(i)));
  }
  const Real ratio = d12 / d23;
  CHECK(ratio > 3.2L);
  CHECK(ratio < 4.8L);
}

TEST_CASE("convex functionals are nonincreasing along the discrete flow") {
  std::mt19937_64 rng(19);
  for (int dim : {1, 3}) {
    Grid g = Grid::make(dim, dim == 1 ? 64 : 8);
    auto st = oracle::random_state(g, rng, 0.1L, 2);
    auto model = InteractionModel::carleman(dim);
    const Real dt = 2 * g.h;
    std::vector<Real> prev;
    for (Real p : {2.0L, 3.0L, 4.0L}) prev.push_back(diag::convex_functional(st, p));
    for (int step = 0; step < 30; ++step) {
      strang_step(st, dt, model);
      int idx = 0;
      for (Real p : {2.0L, 3.0L, 4.0L}) {
        const Real now = diag::convex_functional(st, p);
        CHECK(now <= prev[static_cast<std::size_t>(idx)] + 1e-12L);
        prev[static_cast<std::size_t>(idx++)] = now;
      }
    }
  }
}

TEST_CASE("run: equilibrium initial data stays at distance zero") {
  SimConfig cfg;
  cfg.n = 32;
  cfg.t_end = 2;
  cfg.theorem = "none";
  cfg.initial.preset = "equilibrium";
  cfg.initial.m = 1;
  cfg.model.kind = "constant";
  cfg.model.k0 = 1;
  auto res = run(cfg);
  for (const auto& r : res.table.rows) CHECK(r.dist_sq <= 1e-28L);
}

TEST_CASE("run: mass column constant to 1e-12 relative over 1e4 steps") {
  SimConfig cfg;
  cfg.n = 64;
  cfg.cfl_cells = 1;           // dt = 2h = 1/32
  cfg.t_end = 312.5L;          // 1e4 steps
  cfg.record_every = 100;
  cfg.theorem = "none";
  cfg.initial.preset = "sine";
  cfg.initial.m = 1;
  cfg.initial.amp = 0.5L;
  cfg.model.kind = "carleman";
  auto res = run(cfg);
  CHECK(res.invariants.mass_rel_drift <= 1e-12L);
  const Real mass0 = res.table.rows.front().mass;
  for (const auto& r : res.table.rows)
    CHECK(std::fabs(r.mass - mass0) <= 1e-12L * std::fabs(mass0));
}

TEST_CASE("run: maximum principle and entropy monotonicity hold") {
  SimConfig cfg;
  cfg.n = 64;
  cfg.t_end = 5;
  cfg.record_every = 4;
  cfg.theorem = "none";
  cfg.initial.preset = "blocks";
  cfg.initial.levels = {0.25L, 1.5L, 0.75L, 1.0L};
  cfg.model.kind = "carleman";
  auto res = run(cfg);
  CHECK(res.invariants.min_species >= res.stats.delta - 1e-12L);
  CHECK(res.invariants.max_species <= res.stats.M + 1e-12L);
  CHECK(res.invariants.entropy_step_gain <= 1e-13L);
  for (std::size_t i = 1; i < res.table.rows.size(); ++i)
    CHECK(res.table.rows[i].H <=
          res.table.rows[i - 1].H + 1e-13L * (1 + std::fabs(res.table.rows[i - 1].H)));
}

TEST_CASE("verify: certificate inequality and Lyapunov decay on a short run") {
  SimConfig cfg;
  cfg.n = 128;
  cfg.t_end = 6;
  cfg.record_every = 2;
  cfg.initial.preset = "sine";
  cfg.initial.m = 1;
  cfg.initial.amp = 0.5L;
  cfg.model.kind = "carleman";
  cfg.theorem = "type3";
  RunResult res;
  VerifyReport rep = verify(cfg, &res);
  CHECK(rep.all_pass());
  REQUIRE(res.bound.has_value());
  // the corrected functional decays at least at the certified rate
  const Real E0 = res.table.rows.front().E;
  for (const auto& r : res.table.rows)
    CHECK(r.E <= std::exp(-2 * res.bound->lambda * r.t) * E0 * (1 + 1e-6L));
  // and the certified inequality holds with the recorded bound column
  for (const auto& r : res.table.rows) {
    REQUIRE(r.has_bound);
    CHECK(r.dist_sq <= r.bound_value * (1 + 1e-6L));
  }
}

TEST_CASE("run: type-2 rate with data touching zero is refused") {
  SimConfig cfg;
  cfg.n = 32;
  cfg.t_end = 1;
  cfg.theorem = "none";
  cfg.model.kind = "power_law";
  cfg.model.alpha = -1;
  cfg.model.k1 = 1;
  cfg.initial.preset = "blocks";
  cfg.initial.levels = {0.0L, 1.0L};
  CHECK_THROWS_AS(run(cfg), ConfigError);
}

}  // TEST_SUITE
