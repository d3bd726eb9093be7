#pragma once

#include <complex>
#include <vector>

#include "kin/field.hpp"

namespace kin {

using Cplx = std::complex<Real>;

// Discrete Fourier transform of a fixed length. Power-of-two lengths use an
// iterative radix-2 kernel; other lengths fall back to the O(n^2) sum.
// Plans are immutable after construction and safe to use from several threads.
class FftPlan {
 public:
  explicit FftPlan(int n);

  int size() const { return n_; }

  // In-place transform of n contiguous values. Forward is unnormalized,
  // inverse divides by n, so inverse(forward(a)) == a up to round-off.
  void transform(Cplx* a, bool inverse) const;

 private:
  int n_;
  bool pow2_;
  std::vector<Cplx> tw_;   // tw_[k] = exp(-2 pi i k / n)
  std::vector<int> rev_;   // bit-reversal permutation (power-of-two only)
};

// Apply a 1D transform along one axis (1-based) of a dim-cubed complex array
// laid out like Field values (row-major, axis 1 slowest).
void transform_axis(std::vector<Cplx>& data, const Grid& g, int axis, bool inverse,
                    const FftPlan& plan);

// Signed integer frequency for bin k of an n-point transform: 0,1,...,n/2,-(n/2-1),...,-1.
inline long signed_freq(long k, int n) { return 2 * k <= n ? k : k - n; }

}  // namespace kin
