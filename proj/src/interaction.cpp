#include "kin/interaction.hpp"

#include <cmath>
#include <sstream>

#include "kin/errors.hpp"

namespace kin {

namespace {
Real species_sum(std::span<const Real> s) {
  Real t = 0;
  for (Real v : s) t += v;
  return t;
}
}  // namespace

InteractionModel InteractionModel::constant(int dim, Real k0) {
  if (k0 < 0) throw ConfigError("interaction: constant rate must be nonnegative");
  InteractionModel m;
  m.kind_ = Kind::Constant;
  m.dim_ = dim;
  m.k0_ = k0;
  return m;
}

InteractionModel InteractionModel::carleman(int dim) {
  InteractionModel m;
  m.kind_ = Kind::Carleman;
  m.dim_ = dim;
  return m;
}

InteractionModel InteractionModel::power_law(int dim, Real k1, Real alpha) {
  if (!(k1 > 0)) throw ConfigError("interaction: power_law needs k1 > 0");
  InteractionModel m;
  m.kind_ = Kind::PowerLaw;
  m.dim_ = dim;
  m.alpha_ = alpha;
  m.k1_inf_ = k1;
  m.k1_sup_ = k1;
  return m;
}

InteractionModel InteractionModel::power_law(int dim, Field k1, Real alpha) {
  const Real lo = min_value(k1);
  const Real hi = max_value(k1);
  if (!(lo > 0)) throw ConfigError("interaction: power_law needs ess inf k1 > 0");
  InteractionModel m;
  m.kind_ = Kind::PowerLaw;
  m.dim_ = dim;
  m.alpha_ = alpha;
  m.k1_field_ = std::move(k1);
  m.k1_inf_ = lo;
  m.k1_sup_ = hi;
  return m;
}

InteractionModel InteractionModel::custom(int dim, Evaluator eval, std::optional<TypeFlags> flags,
                                          BoundsFn bounds, std::optional<TypeOneFloor> floor) {
  InteractionModel m;
  m.kind_ = Kind::Custom;
  m.dim_ = dim;
  m.eval_ = std::move(eval);
  m.bounds_ = std::move(bounds);
  m.declared_flags_ = flags;
  m.declared_floor_ = floor;
  return m;
}

Real InteractionModel::eval(std::span<const Real> species, std::size_t cell) const {
  switch (kind_) {
    case Kind::Constant:
      return k0_;
    case Kind::Carleman:
      return species_sum(species);
    case Kind::PowerLaw: {
      const Real s = species_sum(species);
      const Real k1 = k1_field_ ? k1_field_->values[cell] : k1_inf_;
      if (s <= 0) {
        if (alpha_ < 0)
          throw DomainError("interaction: singular rate evaluation at the all-zero point");
        if (alpha_ == 0) return k1;
        return 0;
      }
      return k1 * std::pow(s, alpha_);
    }
    case Kind::Custom:
      return eval_(species, cell);
  }
  return 0;
}

TypeFlags InteractionModel::classify() const {
  TypeFlags f;
  switch (kind_) {
    case Kind::Constant:
      f.type1 = true;
      f.type2 = false;
      f.type3 = k0_ > 0;
      return f;
    case Kind::Carleman:
      f.type1 = true;
      f.type2 = false;
      f.type3 = true;
      return f;
    case Kind::PowerLaw:
      f.type1 = alpha_ >= 0;
      f.type2 = alpha_ < 0;
      f.type3 = true;
      return f;
    case Kind::Custom:
      if (!declared_flags_)
        throw DomainError("interaction: custom rate without declared bounds is unclassifiable");
      return *declared_flags_;
  }
  return f;
}

KappaBounds InteractionModel::kappa_bounds(Real g1, Real g2) const {
  if (g1 < 0 || g2 < g1) throw DomainError("interaction: kappa_bounds needs 0 <= g1 <= g2");
  const Real s = static_cast<Real>(species_count());  // species sum spans [s*g1, s*g2]
  switch (kind_) {
    case Kind::Constant:
      return {k0_, k0_};
    case Kind::Carleman:
      return {s * g1, s * g2};
    case Kind::PowerLaw: {
      if (g1 == 0 && alpha_ < 0)
        throw DomainError("interaction: rate unbounded on a box touching zero (alpha < 0)");
      const Real lo_base = s * g1, hi_base = s * g2;
      auto pw = [&](Real base) {
        if (base == 0) return alpha_ == 0 ? Real(1) : Real(0);
        return std::pow(base, alpha_);
      };
      if (alpha_ >= 0) return {k1_inf_ * pw(lo_base), k1_sup_ * pw(hi_base)};
      return {k1_inf_ * pw(hi_base), k1_sup_ * pw(lo_base)};
    }
    case Kind::Custom:
      if (!bounds_)
        throw DomainError("interaction: custom rate without declared bounds");
      return bounds_(g1, g2);
  }
  return {};
}

bool InteractionModel::rho_only() const {
  return kind_ != Kind::Custom;
}

std::optional<TypeOneFloor> InteractionModel::type_one_floor() const {
  switch (kind_) {
    case Kind::Constant:
      return k0_ > 0 ? std::optional<TypeOneFloor>({0, k0_}) : std::nullopt;
    case Kind::Carleman:
      return TypeOneFloor{1, 1};
    case Kind::PowerLaw:
      if (alpha_ >= 0 && alpha_ <= 1) return TypeOneFloor{alpha_, k1_inf_};
      return std::nullopt;
    case Kind::Custom:
      return declared_floor_;
  }
  return std::nullopt;
}

std::string InteractionModel::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Constant:
      os << "constant k0=" << static_cast<double>(k0_);
      break;
    case Kind::Carleman:
      os << "carleman";
      break;
    case Kind::PowerLaw:
      os << "power_law alpha=" << static_cast<double>(alpha_);
      if (k1_field_)
        os << " k1=field[" << static_cast<double>(k1_inf_) << "," << static_cast<double>(k1_sup_) << "]";
      else
        os << " k1=" << static_cast<double>(k1_inf_);
      break;
    case Kind::Custom:
      os << "custom";
      break;
  }
  return os.str();
}

}  // namespace kin
