#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kin/field.hpp"
#include "kin/solver.hpp"

namespace kin {

// Field wire format: header (u32 dim, u64 n) + values as 64-bit floats in
// row-major axis order, native endianness.
void write_field(std::ostream& out, const Field& f);
Field read_field(std::istream& in);

// Versioned checkpoint: run header + one field block per species.
struct Checkpoint {
  int dim = 1;
  int n = 0;
  Real c = 1;
  Real t = 0;
  long step = 0;
  std::string model;  // descriptor, informational
  std::vector<Field> species;
};

void write_checkpoint(const std::string& path, const KineticState& state,
                      const std::string& model_descriptor);
Checkpoint read_checkpoint(const std::string& path);

}  // namespace kin
