#pragma once

#include <cstdint>

#include "swarmauth/groupauth/scheme.hpp"

namespace swarmauth::groupauth {

/// Trusted dealer. Owns the polynomial and hands out credentials with
/// consecutive indices starting at 1.
///
/// An index whose share evaluates to zero is skipped: its public point would
/// be the identity and every pairwise key with it degenerate. Only small
/// toy groups hit this in practice.
class ControlStation {
 public:
  ControlStation(const Group& group, std::size_t threshold, Rng& rng,
                 const std::optional<Scalar>& group_key = std::nullopt);

  const GroupParams& params() const { return params_; }
  const Polynomial& polynomial() const { return poly_; }
  const Scalar& group_key() const { return poly_.group_key(); }

  Credential issue_next();

  /// Indices handed out so far.
  std::size_t issued() const { return issued_; }

 private:
  Polynomial poly_;
  GroupParams params_;
  std::uint64_t next_index_ = 1;
  std::size_t issued_ = 0;
};

}  // namespace swarmauth::groupauth
