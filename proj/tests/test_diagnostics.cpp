#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kin/diagnostics.hpp"
#include "kin/poisson.hpp"
#include "kin/rates.hpp"
#include "oracles.hpp"

using namespace kin;

namespace {
constexpr Real kTwoPi = 2 * std::numbers::pi_v<Real>;

KineticState constant_pair(Real u, Real v, int n = 16) {
  Grid g = Grid::make(1, n);
  return init_state({Field::constant(g, u), Field::constant(g, v)}, 1).first;
}
}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("entropy: zero at equilibrium, closed form off it") {
  auto eq = constant_pair(1, 1);
  CHECK(std::fabs(diag::entropy_H(eq, 1)) < 1e-18L);

  // u = 2 m, v = 0: per unit mass m (2 log 2 - 1) + m = 2 log 2 m.
  for (Real m : {0.5L, 1.0L, 2.0L}) {
    auto st = constant_pair(2 * m, 0);
    const Real expect = 2 * std::log(Real(2)) * m;
    CHECK(std::fabs(diag::entropy_H(st, m) - expect) < 1e-15L);
    CHECK(diag::entropy_H(st, m) == doctest::Approx(1.38629 * static_cast<double>(m)).epsilon(1e-4));
  }
}

TEST_CASE("entropy sandwich between distance bounds on random states") {
  std::mt19937_64 rng(101);
  for (int it = 0; it < 1000; ++it) {
    Grid g = Grid::make(1, 16);
    auto st = oracle::random_state(g, rng, 0, 2);
    Real mass = 0;
    for (const auto& f : st.species) mass += integrate(f);
    const Real m_inf = mass / 2;
    Real M = 0;
    for (const auto& f : st.species) M = std::max(M, max_value(f));
    const Real H = diag::entropy_H(st, m_inf);
    const Real d = diag::dist_sq(st, m_inf);
    CHECK(H >= d / (2 * M) * (1 - 1e-14L));
    CHECK(H <= d / m_inf * (1 + 1e-14L));
  }
}

TEST_CASE("dissipation: zero at local equilibrium, closed form for constants") {
  auto eq = constant_pair(1.3L, 1.3L);
  auto model = InteractionModel::constant(1, 1);
  auto d = diag::entropy_dissipation(eq, model);
  CHECK_FALSE(d.infinite);
  CHECK(std::fabs(d.value) < 1e-18L);

  auto st = constant_pair(2, 1);
  d = diag::entropy_dissipation(st, model);
  CHECK(std::fabs(d.value - std::log(Real(2))) < 1e-15L);
  CHECK(d.value == doctest::Approx(0.69315).epsilon(1e-4));
}

TEST_CASE("dissipation: zero against positive flags infinity; both-zero contributes 0") {
  auto model = InteractionModel::constant(1, 1);
  auto mixed = constant_pair(1, 0);
  auto d = diag::entropy_dissipation(mixed, model);
  CHECK(d.infinite);

  auto zeros = constant_pair(0, 0);
  d = diag::entropy_dissipation(zeros, model);
  CHECK_FALSE(d.infinite);
  CHECK(d.value == 0);
}

TEST_CASE("dissipation dominates (kappa3/M) * quadratic surrogate on positive states") {
  std::mt19937_64 rng(103);
  auto model = InteractionModel::carleman(1);
  for (int it = 0; it < 300; ++it) {
    Grid g = Grid::make(1, 32);
    auto st = oracle::random_state(g, rng, 0.2L, 2);
    Real M = 0, lo = 1e30L;
    for (const auto& f : st.species) {
      M = std::max(M, max_value(f));
      lo = std::min(lo, min_value(f));
    }
    const Real kappa3 = model.kappa_bounds(lo, M).low;
    const Real D = diag::entropy_dissipation(st, model).value;
    const Real q = diag::quadratic_dissipation(st);
    CHECK(D >= kappa3 / M * q * (1 - 1e-14L));
  }
}

TEST_CASE("quadratic surrogate closed forms") {
  CHECK(diag::quadratic_dissipation(constant_pair(1, 1)) == 0);
  CHECK(std::fabs(diag::quadratic_dissipation(constant_pair(2, 0)) - 4) < 1e-15L);

  Grid g3 = Grid::make(3, 4);
  std::vector<Field> sp(6, Field::constant(g3, 0.8L));
  auto st3 = init_state(std::move(sp), 1).first;
  CHECK(diag::quadratic_dissipation(st3) == 0);
}

TEST_CASE("convex functional: p = 1 is the mass, p = 2 closed form") {
  auto st = constant_pair(1, 1);
  CHECK(std::fabs(diag::convex_functional(st, 1) - 2) < 1e-15L);
  CHECK(std::fabs(diag::convex_functional(st, 2) - 2) < 1e-15L);
}

TEST_CASE("lyapunov functional: eps = 0 is the entropy; flat rho gives E = H") {
  std::mt19937_64 rng(107);
  Grid g = Grid::make(1, 64);
  // u + v constant = 2 m_inf makes the Poisson datum vanish identically.
  Field u = Field::zeros(g);
  Field v = Field::zeros(g);
  for (long i = 0; i < g.n; ++i) {
    const Real w = 0.5L * std::sin(kTwoPi * g.center(i));
    u.at(i) = 1 + w;
    v.at(i) = 1 - w;
  }
  auto st = init_state({u, v}, 1).first;
  const Real H = diag::entropy_H(st, 1);
  CHECK(diag::lyapunov_E(st, 1, 0) == H);
  CHECK(std::fabs(diag::lyapunov_E(st, 1, 0.1L) - H) < 1e-15L);

  // generic state: E differs from H but stays within the coupling bound
  auto st2 = oracle::random_state(g, rng, 0.1L, 2);
  Real mass = 0;
  for (const auto& f : st2.species) mass += integrate(f);
  const Real m_inf = mass / 2;
  const Real E = diag::lyapunov_E(st2, m_inf, 0.05L);
  CHECK(E != diag::entropy_H(st2, m_inf));
  CHECK(E >= 0);
}

TEST_CASE("lyapunov sandwich with the equivalence constants (1D)") {
  std::mt19937_64 rng(109);
  const Real C_R = poisson::elliptic_constant(1).value;
  for (int it = 0; it < 1000; ++it) {
    Grid g = Grid::make(1, 16);
    auto st = oracle::random_state(g, rng, 0.05L, 2);
    Real mass = 0, M = 0;
    for (const auto& f : st.species) {
      mass += integrate(f);
      M = std::max(M, max_value(f));
    }
    const Real m_inf = mass / 2;
    const Real eps = 0.5L / (4 * M * C_R);  // middle of the admissible window
    auto [C1, C2] = rates::equivalence_constants_1d(M, m_inf, C_R, eps);
    const Real E = diag::lyapunov_E(st, m_inf, eps);
    const Real d = diag::dist_sq(st, m_inf);
    CHECK(E >= d / C2 * (1 - 1e-13L));
    CHECK(E <= d / C1 * (1 + 1e-13L));
  }
}

TEST_CASE("coupling term obeys the Cauchy-Schwarz chain") {
  std::mt19937_64 rng(113);
  const Real C_R = poisson::elliptic_constant(1).value;
  for (int it = 0; it < 200; ++it) {
    Grid g = Grid::make(1, 32);
    auto st = oracle::random_state(g, rng, 0, 2);
    Real mass = 0;
    for (const auto& f : st.species) mass += integrate(f);
    const Real m_inf = mass / 2;
    auto sol = poisson::solve(st.rho(), m_inf);
    const Real coupling = std::fabs(diag::j_dot_grad_phi(st, sol));
    const Real jn = std::sqrt(l2_dist_sq(st.momentum(1), 0));
    const Real rn = std::sqrt(l2_dist_sq(st.rho(), 2 * m_inf));
    CHECK(coupling <= C_R * jn * rn * (1 + 1e-12L) + 1e-18L);
  }
}

TEST_CASE("3D lyapunov sandwich with the sqrt(3)-corrected constants") {
  std::mt19937_64 rng(127);
  const Real C_R = poisson::elliptic_constant(3).value;
  for (int it = 0; it < 300; ++it) {
    Grid g = Grid::make(3, 8);
    auto st = oracle::random_state(g, rng, 0.05L, 2);
    Real mass = 0, M = 0;
    for (const auto& f : st.species) {
      mass += integrate(f);
      M = std::max(M, max_value(f));
    }
    const Real m_inf = mass / 6;
    const Real eps = 0.5L / (4 * std::sqrt(Real(3)) * M * C_R);
    auto [C1, C2] = rates::equivalence_constants_3d(M, m_inf, C_R, eps);
    const Real E = diag::lyapunov_E(st, m_inf, eps);
    const Real d = diag::dist_sq(st, m_inf);
    CHECK(E >= d / C2 * (1 - 1e-13L));
    CHECK(E <= d / C1 * (1 + 1e-13L));
  }
}

TEST_CASE("3D pointwise bracket inequalities on random sextuples") {
  std::mt19937_64 rng(131);
  std::uniform_real_distribution<double> uni(0.0, 2.0);
  for (int it = 0; it < 100000; ++it) {
    Real u[3], v[3];
    for (int i = 0; i < 3; ++i) {
      u[i] = static_cast<Real>(uni(rng));
      v[i] = static_cast<Real>(uni(rng));
    }
    // balance-difference bound: U <= 8 sum_{i != j} (u_i - v_j)^2.
    const Real t1 = u[1] + u[2] + v[1] + v[2] - 2 * u[0] - 2 * v[0];
    const Real t2 = u[0] + u[2] + v[0] + v[2] - 2 * u[1] - 2 * v[1];
    const Real t3 = u[0] + u[1] + v[0] + v[1] - 2 * u[2] - 2 * v[2];
    const Real U = t1 * t1 + t2 * t2 + t3 * t3;
    Real cross = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) cross += (u[i] - v[j]) * (u[i] - v[j]);
    CHECK(U <= 8 * cross * (1 + 1e-15L) + 1e-18L);

    // summed mean-square bound against the distance to the average.
    const Real rho = u[0] + u[1] + u[2] + v[0] + v[1] + v[2];
    std::uniform_real_distribution<double> um(0.0, 2.0);
    for (Real m_inf : {rho / 6, static_cast<Real>(um(rng))}) {
      Real same = 0, cross_all = 0, dist = 0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          if (i != j) {
            same += (u[i] - u[j]) * (u[i] - u[j]) + (v[i] - v[j]) * (v[i] - v[j]);
          }
          cross_all += (v[i] - u[j]) * (v[i] - u[j]);
        }
        dist += (u[i] - m_inf) * (u[i] - m_inf) + (v[i] - m_inf) * (v[i] - m_inf);
      }
      const Real r6 = rho - 6 * m_inf;
      const Real lhs = 6 * r6 * r6 + 0.5L * same + cross_all;
      CHECK(lhs >= 6 * dist * (1 - 1e-14L) - 1e-18L);
    }
  }
}

}  // TEST_SUITE
