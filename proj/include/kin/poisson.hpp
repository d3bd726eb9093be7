#pragma once

#include <string>
#include <vector>

#include "kin/field.hpp"

namespace kin::poisson {

// Zero-mean solution of -Lap(phi) = rho - 2 m_inf (1D) or rho - 6 m_inf (3D)
// on the unit torus, with its gradient and the sup-norm residual.
struct Solution {
  Field phi;                // gauge: zero mean
  std::vector<Field> grad;  // one field per axis
  Real residual_sup = 0;    // || -Lap(phi) - f ||_inf
};

struct EllipticConstant {
  Real value;
  std::string norm_convention;
};

// Spectral solve with the exact symbol |2 pi xi|^2. Requires the
// compatibility condition integral(rho) = 2 m_inf (1D) / 6 m_inf (3D)
// to 1e-10 relative; throws DomainError naming the mass defect otherwise.
Solution solve(const Field& rho, Real m_inf);

// Norm bound ||phi||_H2 <= C_R ||f||_L2 for the zero-mean solve above, with
// ||phi||_H2^2 = ||phi||^2 + ||grad phi||^2 + ||D2 phi||^2. The smallest
// nonzero symbol on the unit torus is (2 pi)^2 in both dimensions, so
// C_R = sqrt(1 + (2 pi)^-2 + (2 pi)^-4), attained in the limit of the
// lowest mode. Valid for every zero-mean grid function, since the discrete
// spectrum is a subset of the continuum one.
EllipticConstant elliptic_constant(int dim);

}  // namespace kin::poisson
