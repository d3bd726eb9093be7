#include "kin/solver.hpp"

#include <cmath>
#include <sstream>

#include "kin/errors.hpp"
#include "kin/parallel.hpp"

namespace kin {

Field KineticState::rho() const {
  Field r = species.at(0);
  for (std::size_t s = 1; s < species.size(); ++s)
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += species[s].values[i];
  return r;
}

Field KineticState::momentum(int axis) const {
  if (axis < 1 || axis > dim()) throw std::out_of_range("momentum: axis out of range");
  const Field& u = species.at(static_cast<std::size_t>(axis - 1));
  const Field& v = dim() == 1 ? species.at(1) : species.at(static_cast<std::size_t>(2 + axis));
  Field j = u;
  for (std::size_t i = 0; i < j.values.size(); ++i) j.values[i] -= v.values[i];
  return j;
}

std::pair<KineticState, StateStats> init_state(std::vector<Field> species, Real c) {
  if (!(c > 0)) throw ConfigError("init_state: wave speed c must be positive");
  if (species.size() != 2 && species.size() != 6)
    throw ConfigError("init_state: expected 2 species (1D) or 6 species (3D)");
  const Grid& g = species.front().grid;
  const int want_dim = species.size() == 2 ? 1 : 3;
  if (g.dim != want_dim) throw ConfigError("init_state: species count does not match grid dim");
  for (const Field& f : species) {
    if (!(f.grid == g)) throw ConfigError("init_state: mismatched grids across species");
    if (min_value(f) < 0) throw ConfigError("init_state: negative density values");
    if (!all_finite(f)) throw ConfigError("init_state: non-finite density values");
  }

  KineticState st;
  st.grid = g;
  st.species = std::move(species);
  st.c = c;

  StateStats stats;
  Real mass = 0;
  Real lo = st.species[0].values.empty() ? 0 : st.species[0].values[0];
  Real hi = lo;
  for (const Field& f : st.species) {
    mass += integrate(f);
    lo = std::min(lo, min_value(f));
    hi = std::max(hi, max_value(f));
  }
  stats.m_inf = mass / static_cast<Real>(st.n_species());
  stats.M = hi;
  stats.delta = lo;
  return {std::move(st), stats};
}

namespace {

long integer_cfl(Real c, Real dt, Real h, const char* what) {
  const Real ratio = c * dt / h;
  const Real r = std::round(ratio);
  if (std::fabs(ratio - r) > 1e-9L * std::max<Real>(1, std::fabs(ratio))) {
    std::ostringstream os;
    os << what << ": c*dt/h = " << static_cast<double>(ratio)
       << " is not an integer; choose dt = 2*r*h/c with integer r";
    throw ConfigError(os.str());
  }
  return static_cast<long>(r);
}

}  // namespace

void transport_step(KineticState& state, Real dt) {
  if (dt == 0) return;
  const long r = integer_cfl(state.c, dt, state.grid.h, "transport_step");
  if (state.dim() == 1) {
    state.species[0] = shift(state.species[0], 1, r);
    state.species[1] = shift(state.species[1], 1, -r);
  } else {
    for (int a = 1; a <= 3; ++a) {
      state.species[static_cast<std::size_t>(a - 1)] = shift(state.species[static_cast<std::size_t>(a - 1)], a, r);
      state.species[static_cast<std::size_t>(a + 2)] = shift(state.species[static_cast<std::size_t>(a + 2)], a, -r);
    }
  }
  state.t += dt;
}

void relaxation_step(KineticState& state, Real dt, const InteractionModel& model,
                     int picard_sweeps, int workers) {
  if (model.dim() != state.dim())
    throw ConfigError("relaxation_step: model dimension does not match state");
  if (dt == 0) return;
  const int sweeps = model.rho_only() ? 0 : picard_sweeps;
  const std::size_t cells = state.grid.cells();

  if (state.dim() == 1) {
    Real* u = state.species[0].values.data();
    Real* v = state.species[1].values.data();
    parallel_for(cells, workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const Real ui = u[i], vi = v[i];
        const Real j = ui - vi;
        Real args[2] = {ui, vi};
        Real k = model.eval({args, 2}, i);
        Real w = -std::expm1(-2 * k * dt);  // 1 - e^{-2 k dt} in [0, 1)
        for (int s = 0; s < sweeps; ++s) {
          const Real du = Real(0.5) * w * j;
          Real mid[2] = {ui - Real(0.5) * du, vi + Real(0.5) * du};
          k = model.eval({mid, 2}, i);
          w = -std::expm1(-2 * k * dt);
        }
        const Real du = Real(0.5) * w * j;
        u[i] = ui - du;
        v[i] = vi + du;
      }
    });
  } else {
    Real* p[6];
    for (int s = 0; s < 6; ++s) p[s] = state.species[static_cast<std::size_t>(s)].values.data();
    parallel_for(cells, workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        Real vals[6];
        for (int s = 0; s < 6; ++s) vals[s] = p[s][i];
        // Pairwise sum keeps rho/6 == w exact at constant states.
        const Real rho = (vals[0] + vals[3]) + (vals[1] + vals[4]) + (vals[2] + vals[5]);
        const Real target = rho / 6;
        Real k = model.eval({vals, 6}, i);
        Real w = -std::expm1(-6 * k * dt);
        for (int s = 0; s < sweeps; ++s) {
          Real mid[6];
          for (int q = 0; q < 6; ++q) mid[q] = vals[q] + Real(0.5) * w * (target - vals[q]);
          k = model.eval({mid, 6}, i);
          w = -std::expm1(-6 * k * dt);
        }
        for (int s = 0; s < 6; ++s) p[s][i] = vals[s] + w * (target - vals[s]);
      }
    });
  }
}

void strang_step(KineticState& state, Real dt, const InteractionModel& model,
                 int picard_sweeps, int workers) {
  const Real half = dt / 2;
  integer_cfl(state.c, half, state.grid.h, "strang_step");
  transport_step(state, half);
  relaxation_step(state, dt, model, picard_sweeps, workers);
  transport_step(state, half);
  state.step += 1;
}

}  // namespace kin
