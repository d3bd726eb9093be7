#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace kin {

// Scalar type for grid data and functionals. Extended precision keeps the
// round-off floor of fast-decaying runs below the smallest L^2 distances the
// verification suite fits against (~1e-35 instead of ~1e-29 with double).
using Real = long double;

// Uniform periodic grid on the unit torus, one of T or T^3.
// Cell centers sit at x_i = (i + 1/2) h with h = 1/n per axis.
struct Grid {
  int dim = 1;  // 1 or 3
  int n = 0;    // cells per axis
  Real h = 0;   // spacing, 1/n

  static Grid make(int dim, int n);

  std::size_t cells() const;
  Real center(long i) const { return (static_cast<Real>(i) + 0.5L) * h; }

  // Flat index, row-major with axis 1 slowest.
  std::size_t index(long i1, long i2, long i3) const {
    return (static_cast<std::size_t>(i1) * n + static_cast<std::size_t>(i2)) * n +
           static_cast<std::size_t>(i3);
  }

  bool operator==(const Grid&) const = default;
};

// Cell-centered samples of a scalar function on the torus.
// Fields are plain values: copy freely, share across threads.
struct Field {
  Grid grid;
  std::vector<Real> values;

  static Field constant(const Grid& g, Real value);
  static Field zeros(const Grid& g) { return constant(g, 0); }

  Real& at(long i) { return values[static_cast<std::size_t>(i)]; }
  Real at(long i) const { return values[static_cast<std::size_t>(i)]; }
  Real& at(long i1, long i2, long i3) { return values[grid.index(i1, i2, i3)]; }
  Real at(long i1, long i2, long i3) const { return values[grid.index(i1, i2, i3)]; }
};

// Midpoint quadrature: h^dim * sum of values. Exact under integer shifts.
Real integrate(const Field& f);

// h^dim * sum (values - a)^2, the squared L^2 distance to the constant a.
Real l2_dist_sq(const Field& f, Real a);

// Circular shift along `axis` (1-based) by `cells` (any integer, wraps mod n).
// A bit-exact permutation of the values; positive cells move content toward
// increasing coordinate, i.e. the exact solution of d_t w + (cells*h/dt) d_x w = 0.
Field shift(const Field& f, int axis, long long cells);

Real min_value(const Field& f);
Real max_value(const Field& f);
bool all_finite(const Field& f);

}  // namespace kin
