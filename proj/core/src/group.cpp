#include "magneto/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace magneto {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double radians) {
  double a = std::fmod(radians, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

// Distance of an angle from 0 on the circle, in [0, pi].
double angular_gap(double radians) {
  double a = reduce_angle(radians);
  return std::min(a, kTwoPi - a);
}

}  // namespace

Group Group::cyclic(int k) {
  if (k < 1) throw Error(ErrorCode::kWrongGroup, "cyclic group order must be >= 1");
  return Group(GroupKind::kCyclic, k);
}

std::string Group::describe() const {
  return is_cyclic() ? "S^1_" + std::to_string(order_) : "S^1";
}

GroupElement GroupElement::cyclic(std::int64_t exponent, int k) {
  if (k < 1) throw Error(ErrorCode::kWrongGroup, "cyclic group order must be >= 1");
  std::int64_t j = exponent % k;
  if (j < 0) j += k;
  return GroupElement(GroupKind::kCyclic, static_cast<int>(j), k, kTwoPi * static_cast<double>(j) / k);
}

GroupElement GroupElement::circle(double radians) {
  if (!std::isfinite(radians)) throw Error(ErrorCode::kWrongGroup, "non-finite angle");
  return GroupElement(GroupKind::kCircle, 0, 0, reduce_angle(radians));
}

GroupElement GroupElement::circle_turns(double turns) {
  if (!std::isfinite(turns)) throw Error(ErrorCode::kWrongGroup, "non-finite angle");
  double frac = turns - std::floor(turns);
  return circle(kTwoPi * frac);
}

GroupElement GroupElement::identity(const Group& group) {
  return group.is_cyclic() ? cyclic(0, group.order()) : circle(0.0);
}

Group GroupElement::group() const {
  return kind_ == GroupKind::kCyclic ? Group::cyclic(order_) : Group::circle();
}

std::complex<double> GroupElement::value() const {
  if (kind_ == GroupKind::kCyclic) {
    // Quarter turns are represented exactly.
    if ((4 * static_cast<std::int64_t>(exponent_)) % order_ == 0) {
      switch ((4 * static_cast<std::int64_t>(exponent_)) / order_) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        case 3: return {0.0, -1.0};
        default: break;
      }
    }
  }
  return std::polar(1.0, angle_);
}

double GroupElement::distance_to_one() const {
  if (kind_ == GroupKind::kCyclic) {
    if (exponent_ == 0) return 0.0;
    if (2 * exponent_ == order_) return 2.0;
    return 2.0 * std::sin(std::numbers::pi * exponent_ / order_);
  }
  return 2.0 * std::abs(std::sin(angle_ / 2.0));
}

GroupElement GroupElement::inverse() const {
  if (kind_ == GroupKind::kCyclic) return cyclic(-static_cast<std::int64_t>(exponent_), order_);
  return circle(-angle_);
}

GroupElement GroupElement::operator*(const GroupElement& other) const {
  if (kind_ != other.kind_ || order_ != other.order_) {
    throw Error(ErrorCode::kWrongGroup, "product of elements of " + group().describe() + " and " +
                                            other.group().describe());
  }
  if (kind_ == GroupKind::kCyclic) {
    return cyclic(static_cast<std::int64_t>(exponent_) + other.exponent_, order_);
  }
  return circle(angle_ + other.angle_);
}

bool GroupElement::is_identity(double angle_tol) const {
  if (kind_ == GroupKind::kCyclic) return exponent_ == 0;
  return angular_gap(angle_) <= angle_tol;
}

bool GroupElement::equals(const GroupElement& other, double angle_tol) const {
  if (kind_ != other.kind_ || order_ != other.order_) return false;
  if (kind_ == GroupKind::kCyclic) return exponent_ == other.exponent_;
  return angular_gap(angle_ - other.angle_) <= angle_tol;
}

double distance(const GroupElement& a, const GroupElement& b) {
  return (a.inverse() * b).distance_to_one();
}

GroupElement element_from_value(const Group& group, std::complex<double> value, double tol) {
  if (std::abs(std::abs(value) - 1.0) > tol) {
    throw Error(ErrorCode::kWrongGroup, "value is not of unit modulus");
  }
  double angle = std::arg(value);
  if (group.is_circle()) return GroupElement::circle(angle);
  const int k = group.order();
  double turns = reduce_angle(angle) / kTwoPi * k;
  auto j = static_cast<std::int64_t>(std::llround(turns));
  GroupElement g = GroupElement::cyclic(j, k);
  if (std::abs(g.value() - value) > tol) {
    throw Error(ErrorCode::kWrongGroup, "value is not a root of unity of order " + std::to_string(k));
  }
  return g;
}

}  // namespace magneto
