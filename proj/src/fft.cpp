#include "kin/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kin {

namespace {
constexpr Real kTwoPi = 2 * std::numbers::pi_v<Real>;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

FftPlan::FftPlan(int n) : n_(n), pow2_(is_pow2(n)) {
  if (n < 1) throw std::invalid_argument("FftPlan: n must be positive");
  tw_.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Real ang = -kTwoPi * static_cast<Real>(k) / static_cast<Real>(n);
    tw_[static_cast<std::size_t>(k)] = Cplx(std::cos(ang), std::sin(ang));
  }
  if (pow2_) {
    rev_.resize(static_cast<std::size_t>(n));
    int bits = 0;
    while ((1 << bits) < n) ++bits;
    for (int i = 0; i < n; ++i) {
      int r = 0;
      for (int b = 0; b < bits; ++b)
        if (i & (1 << b)) r |= 1 << (bits - 1 - b);
      rev_[static_cast<std::size_t>(i)] = r;
    }
  }
}

void FftPlan::transform(Cplx* a, bool inverse) const {
  const int n = n_;
  if (n == 1) return;

  if (!pow2_) {
    // Direct sum; adequate for the small non-power-of-two grids we accept.
    std::vector<Cplx> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      Cplx s = 0;
      for (int j = 0; j < n; ++j) {
        std::size_t idx = static_cast<std::size_t>((static_cast<long long>(j) * k) % n);
        Cplx w = tw_[idx];
        if (inverse) w = std::conj(w);
        s += a[j] * w;
      }
      out[static_cast<std::size_t>(k)] = s;
    }
    for (int i = 0; i < n; ++i) a[i] = inverse ? out[static_cast<std::size_t>(i)] / static_cast<Real>(n) : out[static_cast<std::size_t>(i)];
    return;
  }

  for (int i = 0; i < n; ++i) {
    const int r = rev_[static_cast<std::size_t>(i)];
    if (i < r) std::swap(a[i], a[r]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const int stride = n / len;
    for (int i = 0; i < n; i += len) {
      for (int j = 0; j < len / 2; ++j) {
        Cplx w = tw_[static_cast<std::size_t>(j * stride)];
        if (inverse) w = std::conj(w);
        const Cplx u = a[i + j];
        const Cplx v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
  if (inverse) {
    const Real inv = Real(1) / static_cast<Real>(n);
    for (int i = 0; i < n; ++i) a[i] *= inv;
  }
}

void transform_axis(std::vector<Cplx>& data, const Grid& g, int axis, bool inverse,
                    const FftPlan& plan) {
  const int n = g.n;
  if (g.dim == 1) {
    plan.transform(data.data(), inverse);
    return;
  }
  std::vector<Cplx> line(static_cast<std::size_t>(n));
  // Iterate over all lines parallel to `axis`.
  for (long a = 0; a < n; ++a) {
    for (long b = 0; b < n; ++b) {
      std::size_t base = 0, stride = 0;
      switch (axis) {
        case 1:
          base = g.index(0, a, b);
          stride = static_cast<std::size_t>(n) * n;
          break;
        case 2:
          base = g.index(a, 0, b);
          stride = static_cast<std::size_t>(n);
          break;
        case 3:
          base = g.index(a, b, 0);
          stride = 1;
          break;
        default:
          throw std::out_of_range("transform_axis: axis");
      }
      for (long i = 0; i < n; ++i) line[static_cast<std::size_t>(i)] = data[base + static_cast<std::size_t>(i) * stride];
      plan.transform(line.data(), inverse);
      for (long i = 0; i < n; ++i) data[base + static_cast<std::size_t>(i) * stride] = line[static_cast<std::size_t>(i)];
    }
  }
}

}  // namespace kin
