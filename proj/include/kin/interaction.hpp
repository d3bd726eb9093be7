#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "kin/field.hpp"

namespace kin {

// Boundedness classification of an interaction rate k(species..., x):
//   type 1: bounded above on every box [0, gamma]^s
//   type 2: singular at the all-zero point, bounded above on [gamma, inf)^s
//   type 3: bounded above and below by positive constants on [g1, g2]^s, g1 > 0
struct TypeFlags {
  bool type1 = false;
  bool type2 = false;
  bool type3 = false;
};

// Certified enclosure kappa_low <= k <= kappa_high over a species value box.
struct KappaBounds {
  Real low = 0;
  Real high = 0;
};

// Lower floor k >= k1_inf * (sum of species)^alpha with alpha in [0,1],
// the hypothesis of the degenerate-rate decay theorems.
struct TypeOneFloor {
  Real alpha = 0;
  Real k1_inf = 0;
};

// Nonnegative interaction rate coupling the species densities. Carries its
// dimension (two species in 1D, six in 3D) and enough analytic structure to
// produce certified bounds: enclosures are never estimated by sampling.
class InteractionModel {
 public:
  enum class Kind { Constant, Carleman, PowerLaw, Custom };

  using Evaluator = std::function<Real(std::span<const Real>, std::size_t cell)>;
  using BoundsFn = std::function<KappaBounds(Real g1, Real g2)>;

  static InteractionModel constant(int dim, Real k0);
  // k = sum of all species (the quadratic interaction rate).
  static InteractionModel carleman(int dim);
  // k = k1 * (sum of species)^alpha with constant k1 > 0.
  static InteractionModel power_law(int dim, Real k1, Real alpha);
  // k = k1(x) * (sum of species)^alpha with a positive coefficient field.
  static InteractionModel power_law(int dim, Field k1, Real alpha);
  // User-supplied rate. Declared flags/bounds/floor make it certifiable;
  // without declared bounds it cannot participate in classification.
  static InteractionModel custom(int dim, Evaluator eval, std::optional<TypeFlags> flags,
                                 BoundsFn bounds = nullptr,
                                 std::optional<TypeOneFloor> floor = std::nullopt);

  // Rate value at one cell. Throws DomainError for a singular evaluation
  // (negative-exponent power law with all species zero).
  Real eval(std::span<const Real> species, std::size_t cell) const;

  // Analytic classification. Throws DomainError for custom models without
  // declared flags.
  TypeFlags classify() const;

  // Enclosure of k over the box [g1, g2]^species and all x. The species sum then
  // ranges over [s*g1, s*g2] with s = 2 (1D) or 6 (3D). Throws DomainError if
  // the box touches a singularity (g1 = 0 with alpha < 0) or no bounds are
  // declared for a custom model.
  KappaBounds kappa_bounds(Real g1, Real g2) const;

  int dim() const { return dim_; }
  int species_count() const { return dim_ == 1 ? 2 : 6; }
  Kind kind() const { return kind_; }
  Real alpha() const { return alpha_; }
  Real k1_inf() const { return k1_inf_; }
  Real k1_sup() const { return k1_sup_; }

  // True when k depends on the species only through their sum, which the
  // relaxation flow leaves invariant; the frozen-coefficient update is then
  // exact in time.
  bool rho_only() const;

  // Floor for the degenerate-rate certificates, when one is known.
  std::optional<TypeOneFloor> type_one_floor() const;

  std::string describe() const;

 private:
  InteractionModel() = default;

  Kind kind_ = Kind::Constant;
  int dim_ = 1;
  Real k0_ = 0;
  Real alpha_ = 0;
  std::optional<Field> k1_field_;
  Real k1_inf_ = 0;  // ess inf of the coefficient (the constant itself if scalar)
  Real k1_sup_ = 0;
  Evaluator eval_;
  BoundsFn bounds_;
  std::optional<TypeFlags> declared_flags_;
  std::optional<TypeOneFloor> declared_floor_;
};

}  // namespace kin
