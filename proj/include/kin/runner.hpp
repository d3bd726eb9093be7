#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kin/config.hpp"
#include "kin/diagnostics.hpp"
#include "kin/rates.hpp"
#include "kin/solver.hpp"

namespace kin {

// Ordered diagnostics rows with strictly increasing t.
struct TimeSeriesTable {
  std::vector<diag::Record> rows;

  std::vector<Real> column_t() const;
  std::vector<Real> column_dist_sq() const;
};

// CSV schema: t,mass,dist_sq,H,D,E,bound_value. D prints `inf` when flagged,
// bound_value prints `nan` when no certificate is attached.
void write_csv(std::ostream& out, const TimeSeriesTable& table);
void write_csv(const std::string& path, const TimeSeriesTable& table);
TimeSeriesTable read_csv(const std::string& path);

// Exact per-step invariants tracked over a whole run.
struct InvariantReport {
  Real mass_rel_drift = 0;     // max |mass - mass0| / mass0 over every step
  Real min_species = 0;        // min value over every step and species
  Real max_species = 0;        // max value over every step and species
  Real entropy_step_gain = 0;  // max of (H_{n+1} - H_n) / (1 + |H_n|); <= 0 when monotone
};

struct RunResult {
  TimeSeriesTable table;
  KineticState final_state;
  StateStats stats;  // of the initial data
  std::optional<rates::RateBound> bound;
  InvariantReport invariants;
};

// Certificate selected by cfg.theorem for the given initial-data constants.
// "auto" prefers the bounded-below form when delta > 0 and the model is of
// type 3, falling back to the degenerate-rate form when a floor is declared.
std::optional<rates::RateBound> certificate_for(const SimConfig& cfg, const StateStats& stats,
                                                const InteractionModel& model);

// Advance to t_end with the symmetric splitting, recording diagnostics every
// record_every steps (plus the initial and final states). Aborts with
// RunAbort if NaN or negative values appear.
RunResult run(const SimConfig& cfg);

// Same, with caller-supplied initial fields instead of cfg.initial.
RunResult run_from(std::vector<Field> species, const SimConfig& cfg, Real t0 = 0);

// Per-check outcome of `verify`.
struct VerifyCheck {
  std::string name;
  bool pass;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass() const;
};

// Runs the simulation and asserts the certificate inequality together with
// the solver invariants (mass, value bounds, entropy monotonicity, decay of
// the corrected functional).
VerifyReport verify(const SimConfig& cfg, RunResult* out_result = nullptr);

}  // namespace kin
