#include "kin/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kin/errors.hpp"

namespace kin {

Grid Grid::make(int dim, int n) {
  if (dim != 1 && dim != 3) throw ConfigError("grid dim must be 1 or 3");
  if (n < 4) throw ConfigError("grid must have at least 4 cells per axis");
  Grid g;
  g.dim = dim;
  g.n = n;
  g.h = Real(1) / static_cast<Real>(n);
  return g;
}

std::size_t Grid::cells() const {
  std::size_t c = static_cast<std::size_t>(n);
  if (dim == 3) c = c * n * n;
  return c;
}

Field Field::constant(const Grid& g, Real value) {
  Field f;
  f.grid = g;
  f.values.assign(g.cells(), value);
  return f;
}

Real integrate(const Field& f) {
  // Summed in value order: equal multisets give bit-identical results, so the
  // quadrature is exactly invariant under shifts (and any permutation).
  std::vector<Real> sorted(f.values);
  std::sort(sorted.begin(), sorted.end());
  Real sum = 0;
  for (Real v : sorted) sum += v;
  Real hd = f.grid.h;
  if (f.grid.dim == 3) hd = hd * f.grid.h * f.grid.h;
  return sum * hd;
}

Real l2_dist_sq(const Field& f, Real a) {
  Real sum = 0;
  for (Real v : f.values) {
    const Real d = v - a;
    sum += d * d;
  }
  Real hd = f.grid.h;
  if (f.grid.dim == 3) hd = hd * f.grid.h * f.grid.h;
  return sum * hd;
}

Field shift(const Field& f, int axis, long long cells) {
  const int n = f.grid.n;
  if (axis < 1 || axis > f.grid.dim) throw std::out_of_range("shift: axis out of range");
  const long r = static_cast<long>(((cells % n) + n) % n);
  if (r == 0) return f;

  Field out;
  out.grid = f.grid;
  out.values.resize(f.values.size());
  if (f.grid.dim == 1) {
    for (long i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = f.values[static_cast<std::size_t>((i - r + n) % n)];
    return out;
  }
  for (long i1 = 0; i1 < n; ++i1) {
    const long s1 = axis == 1 ? (i1 - r + n) % n : i1;
    for (long i2 = 0; i2 < n; ++i2) {
      const long s2 = axis == 2 ? (i2 - r + n) % n : i2;
      if (axis == 3) {
        const std::size_t dst = f.grid.index(i1, i2, 0);
        const std::size_t src = f.grid.index(s1, s2, 0);
        for (long i3 = 0; i3 < n; ++i3)
          out.values[dst + static_cast<std::size_t>(i3)] = f.values[src + static_cast<std::size_t>((i3 - r + n) % n)];
      } else {
        const std::size_t dst = f.grid.index(i1, i2, 0);
        const std::size_t src = f.grid.index(s1, s2, 0);
        for (long i3 = 0; i3 < n; ++i3)
          out.values[dst + static_cast<std::size_t>(i3)] = f.values[src + static_cast<std::size_t>(i3)];
      }
    }
  }
  return out;
}

Real min_value(const Field& f) {
  Real m = f.values.empty() ? Real(0) : f.values[0];
  for (Real v : f.values)
    if (v < m) m = v;
  return m;
}

Real max_value(const Field& f) {
  Real m = f.values.empty() ? Real(0) : f.values[0];
  for (Real v : f.values)
    if (v > m) m = v;
  return m;
}

bool all_finite(const Field& f) {
  for (Real v : f.values)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace kin
