#pragma once

#include "kin/interaction.hpp"
#include "kin/poisson.hpp"
#include "kin/solver.hpp"

namespace kin::diag {

// Sum over species of the squared L^2 distance to the equilibrium value.
Real dist_sq(const KineticState& state, Real m_inf);

// Relative entropy against the constant equilibrium m_inf:
//   sum_species integral (w/m log(w/m) - w/m + 1) m dx,
// with the continuous extension 0 log 0 = 0. Nonnegative.
Real entropy_H(const KineticState& state, Real m_inf);

struct Dissipation {
  Real value = 0;
  bool infinite = false;  // some pair (a, 0) with a > 0 makes the integrand diverge
};

// Entropy production: integral k (log u - log v)(u - v) in 1D; in 3D half the
// sum over same-species pairs plus half the ordered cross pairs. Pairs with
// both entries zero contribute 0; a zero paired against a positive value
// raises the `infinite` flag instead of fabricating a finite value.
Dissipation entropy_dissipation(const KineticState& state, const InteractionModel& model);

// Quadratic surrogate used when densities may vanish: integral (u-v)^2 in 1D;
// in 3D the full bracket
//   sum_{i!=j} [(u_i-u_j)^2 + (v_i-v_j)^2] + sum_{i,j} (u_i-v_j)^2.
// The caller scales by (2M)^{alpha-1} k1_inf (6M in 3D) for the decay bound.
Real quadratic_dissipation(const KineticState& state);

// sum_species integral w^p dx; nonincreasing along the flow for p >= 1.
Real convex_functional(const KineticState& state, Real p);

// integral j . grad(phi) dx for a previously computed Poisson solution.
Real j_dot_grad_phi(const KineticState& state, const poisson::Solution& sol);

// Hypocoercive Lyapunov functional E = H + eps * integral j . grad(phi),
// where phi solves the Poisson equation for the state's mass density.
// eps = 0 reduces to the entropy.
Real lyapunov_E(const KineticState& state, Real m_inf, Real eps);

// One recorded row of a run's time series.
struct Record {
  Real t = 0;
  Real mass = 0;
  Real dist_sq = 0;
  Real H = 0;
  Dissipation D;
  Real E = 0;
  Real bound_value = 0;   // Lambda e^{-2 lambda t} dist_sq(0), when certified
  bool has_bound = false;
};

}  // namespace kin::diag
