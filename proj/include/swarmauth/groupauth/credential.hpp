#pragma once

#include <cstddef>
#include <vector>

#include "swarmauth/algebra/group.hpp"

namespace swarmauth::groupauth {

using algebra::Group;
using algebra::GroupElement;
using algebra::Scalar;

/// Dealer polynomial p(x) = a_0 + a_1 x + ... + a_{m-1} x^{m-1} over Z_q.
/// a_0 is the group key; the number of coefficients is the threshold m.
class Polynomial {
 public:
  explicit Polynomial(std::vector<Scalar> coefficients);

  const std::vector<Scalar>& coefficients() const { return coefficients_; }
  std::size_t threshold() const { return coefficients_.size(); }
  const Scalar& group_key() const { return coefficients_.front(); }

  /// Horner evaluation.
  Scalar evaluate(const Scalar& x) const;

 private:
  std::vector<Scalar> coefficients_;
};

/// Public half of a member's key material: (x_i, p(x_i)·P).
struct PublicPair {
  Scalar index;
  GroupElement public_point;

  bool operator==(const PublicPair&) const = default;
};

/// A member's full key material as issued by the control station.
struct Credential {
  Scalar index;          // x_i, nonzero
  Scalar private_share;  // p(x_i)
  GroupElement public_point;  // p(x_i)·P

  PublicPair public_pair() const { return {index, public_point}; }
};

/// (x_i, p(x_i)) as used for group-key recovery.
struct Share {
  Scalar index;
  Scalar value;
};

/// Public parameters published by the control station.
struct GroupParams {
  Group group;
  std::size_t threshold = 0;
  /// Q = a_0·P.
  GroupElement verification_point;

  GroupElement generator() const { return group.generator(); }
};

}  // namespace swarmauth::groupauth
