#include "kin/poisson.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kin/errors.hpp"
#include "kin/fft.hpp"

namespace kin::poisson {

namespace {
constexpr Real kTwoPi = 2 * std::numbers::pi_v<Real>;
}

Solution solve(const Field& rho, Real m_inf) {
  const Grid& g = rho.grid;
  const int dim = g.dim;
  const Real target = (dim == 1 ? 2 : 6) * m_inf;

  const Real mass = integrate(rho);
  const Real defect = mass - target;
  if (std::fabs(defect) > 1e-10L * std::max<Real>(1, std::fabs(target))) {
    std::ostringstream os;
    os << "poisson: incompatible data, integral(rho) = " << static_cast<double>(mass)
       << " but " << (dim == 1 ? 2 : 6) << "*m_inf = " << static_cast<double>(target)
       << " (mass defect " << static_cast<double>(defect) << ")";
    throw DomainError(os.str());
  }

  const int n = g.n;
  const std::size_t cells = g.cells();
  std::vector<Cplx> fhat(cells);
  for (std::size_t i = 0; i < cells; ++i) fhat[i] = rho.values[i] - target;

  FftPlan plan(n);
  for (int axis = 1; axis <= dim; ++axis) transform_axis(fhat, g, axis, false, plan);

  // phi_hat = f_hat / |2 pi xi|^2, zero-mean gauge phi_hat(0) = 0.
  // Gradient symbol i 2 pi xi_a, zeroed at the unpaired Nyquist frequency so
  // real input keeps a real derivative.
  std::vector<Cplx> phihat(cells);
  std::vector<std::vector<Cplx>> gradhat(static_cast<std::size_t>(dim),
                                         std::vector<Cplx>(cells));
  std::vector<Cplx> laphat(cells);

  auto fill = [&](std::size_t flat, long s1, long s2, long s3) {
    const Real w1 = kTwoPi * static_cast<Real>(s1);
    const Real w2 = kTwoPi * static_cast<Real>(s2);
    const Real w3 = kTwoPi * static_cast<Real>(s3);
    const Real sym = w1 * w1 + w2 * w2 + w3 * w3;
    if (sym == 0) {
      phihat[flat] = 0;
      laphat[flat] = 0;
      for (int a = 0; a < dim; ++a) gradhat[static_cast<std::size_t>(a)][flat] = 0;
      return;
    }
    const Cplx ph = fhat[flat] / sym;
    phihat[flat] = ph;
    laphat[flat] = ph * sym;
    const Real ws[3] = {w1, w2, w3};
    for (int a = 0; a < dim; ++a) {
      const long s = (a == 0 ? s1 : a == 1 ? s2 : s3);
      const bool nyquist = (n % 2 == 0) && (s == -n / 2 || 2 * s == n);
      gradhat[static_cast<std::size_t>(a)][flat] = nyquist ? Cplx(0) : Cplx(0, ws[a]) * ph;
    }
  };

  if (dim == 1) {
    for (long k = 0; k < n; ++k) fill(static_cast<std::size_t>(k), signed_freq(k, n), 0, 0);
  } else {
    for (long k1 = 0; k1 < n; ++k1)
      for (long k2 = 0; k2 < n; ++k2)
        for (long k3 = 0; k3 < n; ++k3)
          fill(g.index(k1, k2, k3), signed_freq(k1, n), signed_freq(k2, n), signed_freq(k3, n));
  }

  auto to_field = [&](std::vector<Cplx> hat) {
    for (int axis = 1; axis <= dim; ++axis) transform_axis(hat, g, axis, true, plan);
    Field f;
    f.grid = g;
    f.values.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) f.values[i] = hat[i].real();
    return f;
  };

  Solution sol;
  sol.phi = to_field(std::move(phihat));
  sol.grad.reserve(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) sol.grad.push_back(to_field(std::move(gradhat[static_cast<std::size_t>(a)])));

  const Field lap = to_field(std::move(laphat));
  Real res = 0;
  for (std::size_t i = 0; i < cells; ++i) {
    const Real r = std::fabs(lap.values[i] - (rho.values[i] - target));
    if (r > res) res = r;
  }
  sol.residual_sup = res;
  return sol;
}

EllipticConstant elliptic_constant(int dim) {
  if (dim != 1 && dim != 3) throw DomainError("elliptic_constant: dim must be 1 or 3");
  const Real s = kTwoPi * kTwoPi;  // smallest nonzero symbol per axis count
  EllipticConstant ec;
  ec.value = std::sqrt(1 + 1 / s + 1 / (s * s));
  ec.norm_convention =
      "||phi||_H2^2 = ||phi||_L2^2 + ||grad phi||_L2^2 + ||D2 phi||_L2^2 against "
      "||f||_L2; sharp at the lowest nonzero mode of the unit torus";
  return ec;
}

}  // namespace kin::poisson
