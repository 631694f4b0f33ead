#include "swarmauth/groupauth/dealer.hpp"

#include "swarmauth/error.hpp"

namespace swarmauth::groupauth {

ControlStation::ControlStation(const Group& group, std::size_t threshold, Rng& rng,
                               const std::optional<Scalar>& group_key)
    : poly_(gen_polynomial(group, threshold, group_key, rng)),
      params_(make_group_params(group, poly_)) {}

Credential ControlStation::issue_next() {
  const Group& g = params_.group;
  while (true) {
    if (mpz_class(static_cast<unsigned long>(next_index_)) >= g.order()) {
      throw InvalidArgument("control station ran out of indices below the group order");
    }
    Scalar x = g.scalar(static_cast<std::int64_t>(next_index_++));
    Credential cred = issue_credential(poly_, x, params_);
    if (cred.private_share.is_zero()) continue;
    ++issued_;
    return cred;
  }
}

}  // namespace swarmauth::groupauth
