#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "magneto/error.hpp"

namespace magneto {

enum class GroupKind { kCyclic, kCircle };

/// Signature group: either the cyclic group of k-th roots of unity or the full
/// unit circle.
class Group {
 public:
  static Group cyclic(int k);
  static Group circle() { return Group(GroupKind::kCircle, 0); }

  GroupKind kind() const noexcept { return kind_; }
  bool is_cyclic() const noexcept { return kind_ == GroupKind::kCyclic; }
  bool is_circle() const noexcept { return kind_ == GroupKind::kCircle; }
  /// Order k of a cyclic group; 0 for the circle.
  int order() const noexcept { return order_; }

  std::string describe() const;

  friend bool operator==(const Group&, const Group&) = default;

 private:
  Group(GroupKind kind, int order) : kind_(kind), order_(order) {}

  GroupKind kind_;
  int order_;
};

/// Element of S^1_k (exact integer exponent j, value e^{2 pi i j/k}) or of S^1
/// (angle in radians, reduced to [0, 2 pi)).
class GroupElement {
 public:
  static GroupElement cyclic(std::int64_t exponent, int k);
  static GroupElement circle(double radians);
  static GroupElement circle_turns(double turns);
  static GroupElement identity(const Group& group);

  Group group() const;
  bool is_cyclic() const noexcept { return kind_ == GroupKind::kCyclic; }

  /// Exponent j in [0, k). Only meaningful for cyclic elements.
  int exponent() const noexcept { return exponent_; }
  int order() const noexcept { return order_; }
  /// Argument in [0, 2 pi).
  double angle() const noexcept { return angle_; }

  std::complex<double> value() const;

  /// |1 - g|, computed as 2 sin(pi j / k) or 2 |sin(angle / 2)|.
  double distance_to_one() const;

  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& other) const;

  bool is_identity(double angle_tol = 1e-12) const;
  bool equals(const GroupElement& other, double angle_tol = 1e-12) const;

 private:
  GroupElement(GroupKind kind, int exponent, int order, double angle)
      : kind_(kind), exponent_(exponent), order_(order), angle_(angle) {}

  GroupKind kind_;
  int exponent_;
  int order_;
  double angle_;
};

/// |a - b| = |1 - a^{-1} b|; exact for cyclic elements.
double distance(const GroupElement& a, const GroupElement& b);

/// Unit complex number as a group element of `group`. For cyclic groups the
/// value must be a k-th root of unity within `tol`, otherwise kWrongGroup.
GroupElement element_from_value(const Group& group, std::complex<double> value, double tol = 1e-9);

}  // namespace magneto
