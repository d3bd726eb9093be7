#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kin/field.hpp"
#include "kin/interaction.hpp"

namespace kin {

// [model] section: constant | carleman | power_law.
struct ModelSpec {
  std::string kind = "constant";
  Real k0 = 1;
  Real alpha = 0;
  Real k1 = 1;

  InteractionModel build(int dim) const;
  std::string describe() const;
};

// [initial] section: equilibrium | sine | random_band | blocks | checkpoint.
struct InitialSpec {
  std::string preset = "equilibrium";
  Real m = 1;
  Real amp = 0;
  int mode = 1;          // sine wavenumber
  int modes = 1;         // random_band bandwidth
  std::uint64_t seed = 0;
  std::vector<Real> levels;  // blocks
  std::string path;          // checkpoint

  // Lower bound of the generated data, used for parse-time admissibility
  // checks against singular rates.
  Real min_possible() const;
};

// Fully validated run configuration, parsed from the sectioned key = value
// text format described in the README.
struct SimConfig {
  int dim = 1;
  int n = 256;
  Real c = 1;
  // Either dt is given directly (must be an even multiple of h/c) or via
  // cfl_cells = r with dt = 2 r h / c.
  std::optional<Real> dt_explicit;
  int cfl_cells = 1;
  Real t_end = 0;
  long record_every = 1;
  int picard_sweeps = 0;

  ModelSpec model;
  InitialSpec initial;

  std::string theorem = "auto";     // auto | type1 | type3 | none
  std::string eps_policy = "auto";  // auto | explicit
  Real eps = 0;                     // used when eps_policy = explicit

  std::string csv_path;
  std::string checkpoint_path;
  std::string certificate_path;

  int workers = 1;  // set from the CLI, not the file

  Real dt() const;
  long steps() const;  // t_end / dt, validated to be integral
};

SimConfig parse_config(const std::string& path);
SimConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

// Re-validate cross-field constraints (integer CFL, admissible initial data
// for the model, positive horizons). parse_config calls this; callers that
// mutate a config (sweep overrides) must call it again.
void validate(const SimConfig& cfg);

// Apply a dotted override like "model.alpha" = "0.5"; used by sweep grids.
void apply_override(SimConfig& cfg, const std::string& dotted_key, const std::string& value);

// Construct the initial species fields for a preset on a grid (2 fields in
// 1D, 6 in 3D). Deterministic for a fixed seed. Only random_band clamps
// negative values (to 0); every other preset rejects negative data.
std::vector<Field> build_initial(const InitialSpec& spec, const Grid& grid);

}  // namespace kin
