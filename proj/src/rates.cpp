#include "kin/rates.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "kin/errors.hpp"
#include "kin/poisson.hpp"

namespace kin::rates {

namespace {

const Real kSqrt3 = std::sqrt(Real(3));

// Golden-section maximizer on [lo, hi] for a unimodal objective (monotone
// profiles converge to the better endpoint). Returns (arg, value).
std::pair<Real, Real> golden_max(const std::function<Real(Real)>& f, Real lo, Real hi,
                                 Real tol) {
  const Real inv_phi = (std::sqrt(Real(5)) - 1) / 2;
  Real a = lo, b = hi;
  Real x1 = b - inv_phi * (b - a);
  Real x2 = a + inv_phi * (b - a);
  Real f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  const Real x = (a + b) / 2;
  return {x, f(x)};
}

struct Best {
  Real x = 0, y = 0, value = -1;
};

}  // namespace

std::string theorem_name(Theorem t) {
  switch (t) {
    case Theorem::T1D_type3: return "T1D_type3";
    case Theorem::T1D_type1: return "T1D_type1";
    case Theorem::T3D_type3: return "T3D_type3";
    case Theorem::T3D_type1: return "T3D_type1";
  }
  return "?";
}

Real eps_window_1d(Real M, Real C_R) { return 1 / (4 * M * C_R); }
Real eps_window_3d(Real M, Real C_R) { return 1 / (4 * kSqrt3 * M * C_R); }
Real eta_window_3d(Real c, Real C_R, Real kappa_up) { return c / (C_R * (c + 9 * kappa_up)); }

std::pair<Real, Real> equivalence_constants_1d(Real M, Real m_inf, Real C_R, Real eps) {
  if (!(eps > 0) || !(eps < eps_window_1d(M, C_R)))
    throw DomainError("equivalence_constants_1d: eps outside (0, 1/(4 M C_R))");
  const Real C1 = m_inf / (1 + 2 * eps * C_R * m_inf);
  const Real C2 = 2 * M / (1 - 4 * eps * C_R * M);
  return {C1, C2};
}

std::pair<Real, Real> equivalence_constants_3d(Real M, Real m_inf, Real C_R, Real eps) {
  if (!(eps > 0) || !(eps < eps_window_3d(M, C_R)))
    throw DomainError("equivalence_constants_3d: eps outside (0, 1/(4 sqrt(3) M C_R))");
  const Real C1 = m_inf / (1 + 2 * kSqrt3 * eps * C_R * m_inf);
  const Real C2 = 2 * M / (1 - 4 * kSqrt3 * eps * C_R * M);
  return {C1, C2};
}

namespace {

void check_positive_inputs(Real M, Real m_inf, Real c, const char* what) {
  if (!(M > 0) || !(m_inf > 0) || !(c > 0) || M < m_inf) {
    std::ostringstream os;
    os << what << ": need 0 < m_inf <= M and c > 0";
    throw DomainError(os.str());
  }
}

RateBound finish_1d(Theorem which, Real branch_const, Real branch_slope, Real M, Real m_inf,
                    Real c, Real C_R) {
  // lambda(eps) = C1(eps) * min{eps c/2, branch_const - eps*branch_slope} over
  // the admissible window; unimodal (increasing up to the branch crossing,
  // decreasing after).
  const Real eps_max = eps_window_1d(M, C_R);
  auto objective = [&](Real eps) {
    const Real C1 = m_inf / (1 + 2 * eps * C_R * m_inf);
    return C1 * std::min(eps * c / 2, branch_const - eps * branch_slope);
  };
  const Real lo = eps_max * 1e-12L;
  const Real hi = eps_max * (1 - 1e-12L);
  auto [eps_star, lambda] = golden_max(objective, lo, hi, eps_max * 1e-13L);
  if (!(lambda > 0)) throw NoCertificateError("decay bound: certified rate is not positive");

  auto [C1, C2] = equivalence_constants_1d(M, m_inf, C_R, eps_star);
  RateBound rb;
  rb.theorem = which;
  rb.lambda = lambda;
  rb.Lambda = C2 / C1;
  rb.eps_star = eps_star;
  rb.constants["C_R"] = C_R;
  rb.constants["C1"] = C1;
  rb.constants["C2"] = C2;
  rb.constants["M"] = M;
  rb.constants["m_inf"] = m_inf;
  rb.constants["c"] = c;
  return rb;
}

RateBound finish_3d(Theorem which, Real branch_const, Real kappa_up, Real M, Real m_inf,
                    Real c, Real C_R) {
  // C(eps, eta) = min{branch_const - eps*(3 kappa_up C_R/(2 eta) + c C_R/(3 eta) + c/2),
  //                   (eps/6)(c/3 - eta c C_R/3 - 3 eta kappa_up C_R)}
  // lambda = 3 C C1(eps); both theorem variants share this shape.
  const Real eps_max = eps_window_3d(M, C_R);
  const Real eta_max = eta_window_3d(c, C_R, kappa_up);

  auto lambda_at = [&](Real eps, Real eta) {
    const Real drag = 3 * kappa_up * C_R / (2 * eta) + c * C_R / (3 * eta) + c / 2;
    const Real margin = c / 3 - eta * c * C_R / 3 - 3 * eta * kappa_up * C_R;
    const Real C = std::min(branch_const - eps * drag, eps / 6 * margin);
    const Real C1 = m_inf / (1 + 2 * kSqrt3 * eps * C_R * m_inf);
    return 3 * C * C1;
  };

  auto best_eps_for = [&](Real eta) {
    auto obj = [&](Real eps) { return lambda_at(eps, eta); };
    return golden_max(obj, eps_max * 1e-12L, eps_max * (1 - 1e-12L), eps_max * 1e-13L);
  };

  // Outer search over eta: coarse bracket, golden refinement, and a dense
  // grid cross-check to guard against a miss by the nested search.
  Best best;
  {
    const int kCoarse = 192;
    int arg = 1;
    Real argval = -1;
    for (int i = 1; i < kCoarse; ++i) {
      const Real eta = eta_max * static_cast<Real>(i) / kCoarse;
      const Real v = best_eps_for(eta).second;
      if (v > argval) {
        argval = v;
        arg = i;
      }
    }
    const Real lo = eta_max * std::max(arg - 1, 0) / kCoarse + eta_max * 1e-12L;
    const Real hi = std::min(eta_max * (1 - 1e-12L), eta_max * static_cast<Real>(arg + 1) / kCoarse);
    auto [eta_star, lam] =
        golden_max([&](Real eta) { return best_eps_for(eta).second; }, lo, hi, eta_max * 1e-12L);
    best = {best_eps_for(eta_star).first, eta_star, lam};
  }
  {
    const int kGrid = 300;
    Best gb;
    for (int i = 1; i < kGrid; ++i)
      for (int j = 1; j < kGrid; ++j) {
        const Real eps = eps_max * static_cast<Real>(i) / kGrid;
        const Real eta = eta_max * static_cast<Real>(j) / kGrid;
        const Real v = lambda_at(eps, eta);
        if (v > gb.value) gb = {eps, eta, v};
      }
    if (gb.value > best.value) {
      // Refine around the grid cell that beat the nested search.
      const Real lo = std::max(gb.y - eta_max / kGrid, eta_max * 1e-12L);
      const Real hi = std::min(eta_max * (1 - 1e-12L), gb.y + eta_max / kGrid);
      auto [eta_star, lam] =
          golden_max([&](Real eta) { return best_eps_for(eta).second; }, lo, hi, eta_max * 1e-12L);
      if (lam > best.value) best = {best_eps_for(eta_star).first, eta_star, lam};
    }
  }
  if (!(best.value > 0)) throw NoCertificateError("decay bound: certified rate is not positive");

  const Real eps_star = best.x, eta_star = best.y;
  auto [C1, C2] = equivalence_constants_3d(M, m_inf, C_R, eps_star);
  RateBound rb;
  rb.theorem = which;
  rb.lambda = lambda_at(eps_star, eta_star);
  rb.Lambda = C2 / C1;
  rb.eps_star = eps_star;
  rb.eta_star = eta_star;
  rb.constants["C_R"] = C_R;
  rb.constants["C1"] = C1;
  rb.constants["C2"] = C2;
  rb.constants["M"] = M;
  rb.constants["m_inf"] = m_inf;
  rb.constants["c"] = c;
  rb.constants["C"] = rb.lambda / (3 * C1);
  return rb;
}

}  // namespace

RateBound decay_bound_1d_type3(Real delta, Real M, Real m_inf, Real c,
                               const InteractionModel& model) {
  check_positive_inputs(M, m_inf, c, "decay_bound_1d_type3");
  if (!(delta > 0)) throw DomainError("decay_bound_1d_type3: needs delta > 0");
  if (!model.classify().type3)
    throw NoCertificateError("decay_bound_1d_type3: model is not of type 3");
  const KappaBounds kb = model.kappa_bounds(delta, M);
  if (!(kb.low > 0))
    throw NoCertificateError("decay_bound_1d_type3: kappa3 = 0 on [delta, M], no certificate");
  const Real C_R = poisson::elliptic_constant(1).value;
  RateBound rb = finish_1d(Theorem::T1D_type3, kb.low / M,
                           kb.high * kb.high * C_R * C_R / (2 * c) + c, M, m_inf, c, C_R);
  rb.constants["kappa3"] = kb.low;
  rb.constants["kappa4"] = kb.high;
  rb.constants["delta"] = delta;
  return rb;
}

RateBound decay_bound_1d_type1(Real alpha, Real M, Real m_inf, Real c, Real kappa1,
                               Real k1_inf) {
  check_positive_inputs(M, m_inf, c, "decay_bound_1d_type1");
  if (alpha < 0 || alpha > 1) throw DomainError("decay_bound_1d_type1: alpha must be in [0,1]");
  if (!(k1_inf > 0)) throw NoCertificateError("decay_bound_1d_type1: needs ess inf k1 > 0");
  const Real C_R = poisson::elliptic_constant(1).value;
  const Real floor = std::pow(2 * M, alpha - 1) * k1_inf;
  RateBound rb = finish_1d(Theorem::T1D_type1, floor, kappa1 * C_R * C_R / (2 * c) + c, M,
                           m_inf, c, C_R);
  rb.constants["kappa1"] = kappa1;
  rb.constants["alpha"] = alpha;
  rb.constants["k1_inf"] = k1_inf;
  return rb;
}

RateBound decay_bound_3d_type3(Real delta, Real M, Real m_inf, Real c,
                               const InteractionModel& model) {
  check_positive_inputs(M, m_inf, c, "decay_bound_3d_type3");
  if (!(delta > 0)) throw DomainError("decay_bound_3d_type3: needs delta > 0");
  if (!model.classify().type3)
    throw NoCertificateError("decay_bound_3d_type3: model is not of type 3");
  const KappaBounds kb = model.kappa_bounds(delta, M);
  if (!(kb.low > 0))
    throw NoCertificateError("decay_bound_3d_type3: kappa3 = 0 on [delta, M], no certificate");
  const Real C_R = poisson::elliptic_constant(3).value;
  RateBound rb = finish_3d(Theorem::T3D_type3, kb.low / (2 * M), kb.high, M, m_inf, c, C_R);
  rb.constants["kappa3"] = kb.low;
  rb.constants["kappa4"] = kb.high;
  rb.constants["delta"] = delta;
  return rb;
}

RateBound decay_bound_3d_type1(Real alpha, Real M, Real m_inf, Real c, Real kappa1,
                               Real k1_inf) {
  check_positive_inputs(M, m_inf, c, "decay_bound_3d_type1");
  if (alpha < 0 || alpha > 1) throw DomainError("decay_bound_3d_type1: alpha must be in [0,1]");
  if (!(k1_inf > 0)) throw NoCertificateError("decay_bound_3d_type1: needs ess inf k1 > 0");
  const Real C_R = poisson::elliptic_constant(3).value;
  const Real floor = std::pow(6 * M, alpha - 1) * k1_inf / 2;
  RateBound rb = finish_3d(Theorem::T3D_type1, floor, kappa1, M, m_inf, c, C_R);
  rb.constants["kappa1"] = kappa1;
  rb.constants["alpha"] = alpha;
  rb.constants["k1_inf"] = k1_inf;
  return rb;
}

FitResult fit_empirical_rate(const std::vector<Real>& t, const std::vector<Real>& dist_sq,
                             Real t_lo, Real t_hi) {
  if (t.size() != dist_sq.size()) throw DomainError("fit: mismatched column lengths");
  std::vector<Real> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (!(dist_sq[i] > 0))
      throw DomainError("fit: dist_sq must be strictly positive on the window");
    xs.push_back(t[i]);
    ys.push_back(std::log(dist_sq[i]));
  }
  if (xs.size() < 3) throw DomainError("fit: fewer than 3 samples in the window");

  const Real n = static_cast<Real>(xs.size());
  Real sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const Real mx = sx / n, my = sy / n;
  Real sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Real dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0)) throw DomainError("fit: degenerate time column");
  const Real slope = sxy / sxx;
  Real ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Real r = (ys[i] - my) - slope * (xs[i] - mx);
    ss_res += r * r;
  }
  FitResult fr;
  fr.lambda_emp = -slope / 2;
  fr.window_lo = t_lo;
  fr.window_hi = t_hi;
  // A column constant to round-off fits the line exactly; report r^2 = 1
  // instead of amplifying summation jitter.
  const Real degenerate = n * 1e-30L * (1 + my * my);
  fr.r_squared = syy > degenerate ? std::max<Real>(0, 1 - ss_res / syy) : 1;
  return fr;
}

}  // namespace kin::rates
