#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kin/interaction.hpp"

namespace kin::rates {

enum class Theorem { T1D_type3, T1D_type1, T3D_type3, T3D_type1 };

std::string theorem_name(Theorem t);

// Explicit decay certificate: dist_sq(t) <= Lambda e^{-2 lambda t} dist_sq(0),
// together with the coupling parameters that realize it and every constant
// entering the formula, so a failed check is attributable.
struct RateBound {
  Theorem theorem = Theorem::T1D_type3;
  Real lambda = 0;
  Real Lambda = 1;
  Real eps_star = 0;
  std::optional<Real> eta_star;
  std::map<std::string, Real> constants;
};

// Equivalence constants of the corrected entropy functional:
//   (1/C2) dist_sq <= E <= (1/C1) dist_sq
// with C1 = m_inf / (1 + 2 eps C_R m_inf), C2 = 2M / (1 - 4 eps C_R M),
// valid for 0 < eps < 1/(4 M C_R). In 3D the cross term picks up the factor
// sqrt(12) = 2 sqrt(3), shrinking the window to eps < 1/(4 sqrt(3) M C_R).
std::pair<Real, Real> equivalence_constants_1d(Real M, Real m_inf, Real C_R, Real eps);
std::pair<Real, Real> equivalence_constants_3d(Real M, Real m_inf, Real C_R, Real eps);

Real eps_window_1d(Real M, Real C_R);  // 1/(4 M C_R)
Real eps_window_3d(Real M, Real C_R);  // 1/(4 sqrt(3) M C_R)

// Certified rates, maximized over the free coupling parameters.
//
// 1D, bounded-below rate on [delta, M]:
//   lambda(eps) = C1(eps) * min{ eps c / 2,
//                                kappa3/M - eps kappa4^2 C_R^2/(2c) - eps c }.
RateBound decay_bound_1d_type3(Real delta, Real M, Real m_inf, Real c,
                               const InteractionModel& model);

// 1D, degenerate rate with floor k >= k1(x) (u+v)^alpha, alpha in [0,1]:
//   lambda(eps) = C1(eps) * min{ eps c / 2,
//                                (2M)^{alpha-1} k1_inf - eps kappa1 C_R^2/(2c) - eps c }.
RateBound decay_bound_1d_type1(Real alpha, Real M, Real m_inf, Real c, Real kappa1,
                               Real k1_inf);

// 3D analogues; lambda = 3 C C1 with a second parameter eta > 0:
//   C(eps, eta) = min{ kappa3/(2M) - eps (3 kappa4 C_R/(2 eta) + c C_R/(3 eta)) - eps c/2,
//                      (eps/6)(c/3 - eta c C_R/3 - 3 eta kappa4 C_R) },
// maximized over eta in (0, c / (C_R (c + 9 kappa4))) and admissible eps.
RateBound decay_bound_3d_type3(Real delta, Real M, Real m_inf, Real c,
                               const InteractionModel& model);

//   C(eps, eta) = min{ (6M)^{alpha-1} k1_inf/2
//                        - eps (3 kappa1 C_R/(2 eta) + c C_R/(3 eta) + c/2),
//                      (eps/6)(c/3 - eta c C_R/3 - 3 eta kappa1 C_R) }.
RateBound decay_bound_3d_type1(Real alpha, Real M, Real m_inf, Real c, Real kappa1,
                               Real k1_inf);

// Largest eta with a positive transport margin: c / (C_R (c + 9 kappa_up)).
Real eta_window_3d(Real c, Real C_R, Real kappa_up);

// Least-squares fit of log dist_sq(t) over t in [t_lo, t_hi];
// lambda_emp = -slope/2. Throws on nonpositive values or fewer than 3 samples.
struct FitResult {
  Real lambda_emp = 0;
  Real window_lo = 0;
  Real window_hi = 0;
  Real r_squared = 0;
};

FitResult fit_empirical_rate(const std::vector<Real>& t, const std::vector<Real>& dist_sq,
                             Real t_lo, Real t_hi);

}  // namespace kin::rates
