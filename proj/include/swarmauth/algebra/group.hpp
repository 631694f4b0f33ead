#pragma once

// Prime-order cyclic groups written additively.
//
// Two instantiations share one interface:
//   * a short-Weierstrass curve y^2 = x^3 + ax + b over F_p, and
//   * a "toy" group Z_q whose elements are their own discrete logs
//     (generator = 1), so every group computation can be replayed in plain
//     modular arithmetic and checked.
//
// Arithmetic is variable-time. This code exists to check protocol
// correctness and must not be used to protect real secrets.

#include <memory>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "swarmauth/algebra/scalar.hpp"
#include "swarmauth/bytes.hpp"

namespace swarmauth::algebra {

struct CurveParams {
  std::string name;
  mpz_class p;
  mpz_class a;
  mpz_class b;
  mpz_class gx;
  mpz_class gy;
  mpz_class q;

  bool operator==(const CurveParams& rhs) const {
    return p == rhs.p && a == rhs.a && b == rhs.b && gx == rhs.gx &&
           gy == rhs.gy && q == rhs.q;
  }
};

/// The default 256-bit prime-order curve, parsed from the checked-in
/// config/curves/p256.json at build time.
const CurveParams& default_curve();

/// JSON object with decimal-string fields {p, a, b, gx, gy, q} (and an
/// optional "name").
CurveParams curve_params_from_json(const std::string& json_text);
CurveParams load_curve_params(const std::string& path);
std::string curve_params_to_json(const CurveParams& params);

enum class GroupKind { EllipticCurve, Toy };

/// Immutable description of a group. Constructed only through the
/// validating factories below.
class GroupDescriptor {
 public:
  GroupKind kind() const { return kind_; }
  const mpz_class& order() const { return order_; }
  /// Present only for EllipticCurve.
  const std::optional<CurveParams>& curve() const { return curve_; }
  /// True when every point on the curve lies in the order-q subgroup, so
  /// an on-curve check is a full membership check.
  bool cofactor_is_one() const { return cofactor_one_; }

  bool operator==(const GroupDescriptor& rhs) const;

 private:
  friend class Group;
  GroupDescriptor() = default;

  GroupKind kind_ = GroupKind::Toy;
  mpz_class order_;
  std::optional<CurveParams> curve_;
  bool cofactor_one_ = true;
};

class GroupElement;

/// Handle to a shared immutable GroupDescriptor. Cheap to copy.
class Group {
 public:
  /// Validates: p and q prime, non-singular curve, generator on the curve
  /// with order exactly q. Throws InvalidArgument otherwise.
  static Group elliptic(const CurveParams& params);
  static Group default_elliptic();
  /// q must be prime. Generator is elem(1).
  static Group toy(const mpz_class& q);
  static Group toy(std::uint64_t q = 31) { return toy(mpz_class(q)); }

  const GroupDescriptor& descriptor() const { return *desc_; }
  GroupKind kind() const { return desc_->kind(); }
  const mpz_class& order() const { return desc_->order(); }

  GroupElement identity() const;
  GroupElement generator() const;

  Scalar scalar(std::int64_t v) const { return Scalar(v, order()); }
  Scalar scalar(const mpz_class& v) const { return Scalar(v, order()); }
  Scalar random_scalar(Rng& rng) const { return Scalar::random(order(), rng); }

  /// Toy group only: the element whose discrete log is `log`.
  GroupElement toy_element(const mpz_class& log) const;
  GroupElement toy_element(std::int64_t log) const;

  /// Affine point; throws DecodeError when not a group member.
  GroupElement point(const mpz_class& x, const mpz_class& y) const;

  /// Validating decoder, inverse of serialize().
  GroupElement deserialize(std::span<const std::uint8_t> bytes) const;

  bool operator==(const Group& rhs) const;

 private:
  explicit Group(std::shared_ptr<const GroupDescriptor> desc)
      : desc_(std::move(desc)) {}
  friend class GroupElement;

  std::shared_ptr<const GroupDescriptor> desc_;
};

/// A member of a Group. Holds its group so that mixing elements from
/// different groups raises GroupMismatch.
class GroupElement {
 public:
  const Group& group() const { return group_; }
  bool is_identity() const { return identity_; }

  /// Affine coordinates (curve) or discrete log (toy). Undefined for the
  /// identity of a curve group.
  const mpz_class& x() const { return x_; }
  const mpz_class& y() const { return y_; }

  /// Toy group only.
  mpz_class discrete_log() const;

  GroupElement operator+(const GroupElement& rhs) const;
  GroupElement operator-() const;
  GroupElement operator-(const GroupElement& rhs) const { return *this + (-rhs); }
  GroupElement& operator+=(const GroupElement& rhs) { return *this = *this + rhs; }

  bool operator==(const GroupElement& rhs) const;

 private:
  friend class Group;
  friend GroupElement scalar_mult(const Scalar& s, const GroupElement& p);

  explicit GroupElement(Group g) : group_(std::move(g)) {}

  Group group_;
  bool identity_ = true;
  mpz_class x_;
  mpz_class y_;
};

GroupElement point_add(const GroupElement& a, const GroupElement& b);

/// Left-to-right double-and-add. The scalar's modulus must equal the group
/// order.
GroupElement scalar_mult(const Scalar& s, const GroupElement& p);
inline GroupElement operator*(const Scalar& s, const GroupElement& p) {
  return scalar_mult(s, p);
}

/// Identity: single 0x00 byte. Curve point: 0x04 || X || Y, big-endian,
/// each coordinate as wide as p. Toy element: 32-byte little-endian value.
Bytes serialize(const GroupElement& e);

inline GroupElement deserialize(const Group& g, std::span<const std::uint8_t> b) {
  return g.deserialize(b);
}

}  // namespace swarmauth::algebra
