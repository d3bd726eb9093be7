#pragma once

#include <utility>
#include <vector>

#include "kin/field.hpp"
#include "kin/interaction.hpp"

namespace kin {

// State of the two-species (1D) or six-species (3D) system. Species order is
// [u, v] in 1D and [u1, u2, u3, v1, v2, v3] in 3D; u_i streams toward
// increasing x_i, v_i toward decreasing x_i, both at speed c.
struct KineticState {
  Grid grid;
  std::vector<Field> species;
  Real c = 1;
  Real t = 0;
  long step = 0;

  int dim() const { return grid.dim; }
  std::size_t n_species() const { return species.size(); }

  // Total mass density: u + v, or the sum of all six species.
  Field rho() const;
  // Momentum component along `axis` (1-based): u_axis - v_axis.
  Field momentum(int axis) const;
};

// Constants of the initial data that drive every certificate:
// equilibrium value m_inf, sup bound M, inf bound delta.
struct StateStats {
  Real m_inf = 0;
  Real M = 0;
  Real delta = 0;
};

// Packages nonnegative species fields into a state and computes its stats;
// m_inf = integral(rho) / (2 or 6). Throws on negative data, mismatched
// grids, wrong species count, or c <= 0.
std::pair<KineticState, StateStats> init_state(std::vector<Field> species, Real c);

// Free streaming over dt as an exact circular shift: requires c*dt/h to be an
// integer r (ConfigError otherwise). Each u_i moves +r cells along axis i,
// each v_i moves -r cells. A bit-exact permutation per species.
void transport_step(KineticState& state, Real dt);

// Exact relaxation with the rate frozen per cell at the incoming values:
// 1D   j <- j * exp(-2 k dt) at fixed rho,
// 3D   w <- rho/6 + (w - rho/6) * exp(-6 k dt) at fixed rho.
// New values are convex combinations of the old ones, so positivity, the
// value range, and monotonicity of convex functionals are preserved exactly.
// For rates depending only on rho the frozen coefficient is exact in time;
// picard_sweeps > 0 re-evaluates the rate at the midpoint for general rates.
// The per-cell update has no cross-cell dependence; workers > 1 splits the
// cells over threads with bit-identical results.
void relaxation_step(KineticState& state, Real dt, const InteractionModel& model,
                     int picard_sweeps = 0, int workers = 1);

// Symmetric splitting: transport(dt/2), relaxation(dt), transport(dt/2).
// Requires c*dt/(2h) integer; second order in dt for smooth solutions.
void strang_step(KineticState& state, Real dt, const InteractionModel& model,
                 int picard_sweeps = 0, int workers = 1);

}  // namespace kin
