#include "kin/diagnostics.hpp"

#include <cmath>

#include "kin/errors.hpp"

namespace kin::diag {

namespace {

Real cell_volume(const Grid& g) {
  Real hd = g.h;
  if (g.dim == 3) hd = hd * g.h * g.h;
  return hd;
}

}  // namespace

Real dist_sq(const KineticState& state, Real m_inf) {
  Real s = 0;
  for (const Field& f : state.species) s += l2_dist_sq(f, m_inf);
  return s;
}

Real entropy_H(const KineticState& state, Real m_inf) {
  if (!(m_inf > 0)) throw DomainError("entropy_H: m_inf must be positive");
  Real sum = 0;
  for (const Field& f : state.species) {
    for (Real w : f.values) {
      // m * (s log s - s + 1) at s = w/m, extended by m at w = 0.
      sum += w > 0 ? w * std::log(w / m_inf) - w + m_inf : m_inf;
    }
  }
  return sum * cell_volume(state.grid);
}

Dissipation entropy_dissipation(const KineticState& state, const InteractionModel& model) {
  const std::size_t cells = state.grid.cells();
  Dissipation out;
  Real sum = 0;
  if (state.dim() == 1) {
    const Real* u = state.species[0].values.data();
    const Real* v = state.species[1].values.data();
    for (std::size_t i = 0; i < cells; ++i) {
      const Real a = u[i], b = v[i];
      if (a == 0 && b == 0) continue;
      if (a == 0 || b == 0) {
        out.infinite = true;
        out.value = INFINITY;
        return out;
      }
      Real args[2] = {a, b};
      sum += model.eval({args, 2}, i) * (std::log(a) - std::log(b)) * (a - b);
    }
  } else {
    const Real* p[6];
    for (int s = 0; s < 6; ++s) p[s] = state.species[static_cast<std::size_t>(s)].values.data();
    for (std::size_t i = 0; i < cells; ++i) {
      Real w[6], lg[6];
      bool any_zero = false, all_zero = true;
      for (int s = 0; s < 6; ++s) {
        w[s] = p[s][i];
        if (w[s] == 0) any_zero = true; else all_zero = false;
      }
      if (all_zero) continue;
      if (any_zero) {
        // Mixed zero/positive cell: at least one pair has a divergent integrand.
        out.infinite = true;
        out.value = INFINITY;
        return out;
      }
      for (int s = 0; s < 6; ++s) lg[s] = std::log(w[s]);
      Real cell = 0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          if (a != b) {
            cell += (lg[a] - lg[b]) * (w[a] - w[b]);          // u_a vs u_b
            cell += (lg[3 + a] - lg[3 + b]) * (w[3 + a] - w[3 + b]);  // v_a vs v_b
          }
          cell += (lg[a] - lg[3 + b]) * (w[a] - w[3 + b]);    // u_a vs v_b
        }
      Real args[6];
      for (int s = 0; s < 6; ++s) args[s] = w[s];
      sum += model.eval({args, 6}, i) * Real(0.5) * cell;
    }
  }
  out.value = sum * cell_volume(state.grid);
  return out;
}

Real quadratic_dissipation(const KineticState& state) {
  const std::size_t cells = state.grid.cells();
  Real sum = 0;
  if (state.dim() == 1) {
    const Real* u = state.species[0].values.data();
    const Real* v = state.species[1].values.data();
    for (std::size_t i = 0; i < cells; ++i) {
      const Real j = u[i] - v[i];
      sum += j * j;
    }
  } else {
    const Real* p[6];
    for (int s = 0; s < 6; ++s) p[s] = state.species[static_cast<std::size_t>(s)].values.data();
    for (std::size_t i = 0; i < cells; ++i) {
      Real cell = 0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          if (a != b) {
            const Real du = p[a][i] - p[b][i];
            const Real dv = p[3 + a][i] - p[3 + b][i];
            cell += du * du + dv * dv;
          }
          const Real x = p[a][i] - p[3 + b][i];
          cell += x * x;
        }
      sum += cell;
    }
  }
  return sum * cell_volume(state.grid);
}

Real convex_functional(const KineticState& state, Real p) {
  if (p < 1) throw DomainError("convex_functional: p must be >= 1");
  Real sum = 0;
  for (const Field& f : state.species)
    for (Real w : f.values) sum += std::pow(w, p);
  return sum * cell_volume(state.grid);
}

Real j_dot_grad_phi(const KineticState& state, const poisson::Solution& sol) {
  const std::size_t cells = state.grid.cells();
  Real sum = 0;
  for (int axis = 1; axis <= state.dim(); ++axis) {
    const Field& u = state.species[static_cast<std::size_t>(axis - 1)];
    const Field& v = state.dim() == 1 ? state.species[1]
                                      : state.species[static_cast<std::size_t>(2 + axis)];
    const Field& g = sol.grad[static_cast<std::size_t>(axis - 1)];
    for (std::size_t i = 0; i < cells; ++i) sum += (u.values[i] - v.values[i]) * g.values[i];
  }
  return sum * cell_volume(state.grid);
}

Real lyapunov_E(const KineticState& state, Real m_inf, Real eps) {
  if (eps < 0) throw DomainError("lyapunov_E: eps must be nonnegative");
  const Real H = entropy_H(state, m_inf);
  if (eps == 0) return H;
  const poisson::Solution sol = poisson::solve(state.rho(), m_inf);
  return H + eps * j_dot_grad_phi(state, sol);
}

}  // namespace kin::diag
