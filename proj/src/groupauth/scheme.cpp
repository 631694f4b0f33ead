#include "swarmauth/groupauth/scheme.hpp"

#include <openssl/evp.h>

#include <string_view>

#include "swarmauth/error.hpp"

namespace swarmauth::groupauth {

namespace {

constexpr std::string_view kPairwiseKdfLabel = "swarmauth/pairwise-key/v1";

void require_distinct_nonzero(std::span<const Scalar> indices) {
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i].is_zero()) throw InvalidArgument("index 0 is not allowed");
    for (std::size_t j = i + 1; j < indices.size(); ++j) {
      if (indices[i] == indices[j]) {
        throw InvalidArgument("repeated index " + indices[i].to_decimal());
      }
    }
  }
}

void require_round_size(std::span<const Scalar> indices, const GroupParams& params) {
  if (indices.size() != params.threshold) {
    throw InvalidArgument("authentication round needs exactly " +
                          std::to_string(params.threshold) + " indices, got " +
                          std::to_string(indices.size()));
  }
}

}  // namespace

Polynomial::Polynomial(std::vector<Scalar> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw InvalidArgument("polynomial needs at least one coefficient");
  for (const Scalar& c : coefficients_) {
    if (c.modulus() != coefficients_.front().modulus()) {
      throw GroupMismatch("polynomial coefficients from different fields");
    }
  }
}

Scalar Polynomial::evaluate(const Scalar& x) const {
  Scalar acc = coefficients_.back();
  for (auto it = coefficients_.rbegin() + 1; it != coefficients_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

Polynomial gen_polynomial(const Group& group, std::size_t m,
                          const std::optional<Scalar>& group_key, Rng& rng) {
  if (m == 0) throw InvalidArgument("threshold m must be at least 1");
  if (group_key && group_key->modulus() != group.order()) {
    throw GroupMismatch("group key is not a scalar of this group");
  }
  std::vector<Scalar> coeffs;
  coeffs.reserve(m);
  coeffs.push_back(group_key ? *group_key : group.random_scalar(rng));
  for (std::size_t i = 1; i < m; ++i) coeffs.push_back(group.random_scalar(rng));
  return Polynomial(std::move(coeffs));
}

GroupParams make_group_params(const Group& group, const Polynomial& poly) {
  if (poly.group_key().modulus() != group.order()) {
    throw GroupMismatch("polynomial is not over this group's scalar field");
  }
  return GroupParams{group, poly.threshold(), scalar_mult(poly.group_key(), group.generator())};
}

Credential issue_credential(const Polynomial& poly, const Scalar& x, const GroupParams& params) {
  if (x.is_zero()) throw InvalidArgument("credential index 0 would reveal the group key");
  if (x.modulus() != params.group.order()) throw GroupMismatch("index from a different field");
  Scalar share = poly.evaluate(x);
  GroupElement point = scalar_mult(share, params.generator());
  return Credential{x, std::move(share), std::move(point)};
}

std::vector<Credential> issue_credentials(const Polynomial& poly, std::span<const Scalar> indices,
                                          const GroupParams& params) {
  require_distinct_nonzero(indices);
  std::vector<Credential> out;
  out.reserve(indices.size());
  for (const Scalar& x : indices) out.push_back(issue_credential(poly, x, params));
  return out;
}

std::size_t position_of(std::span<const Scalar> indices, const Scalar& index) {
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] == index) return i;
  }
  throw InvalidArgument("index " + index.to_decimal() + " is not part of the round");
}

Scalar lagrange_coeff_at_zero(std::span<const Scalar> indices, std::size_t position) {
  if (indices.empty()) throw InvalidArgument("lagrange: empty index list");
  if (position >= indices.size()) throw InvalidArgument("lagrange: position out of range");
  require_distinct_nonzero(indices);
  const Scalar& xi = indices[position];
  Scalar num = Scalar::one(xi.modulus());
  Scalar den = Scalar::one(xi.modulus());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    if (r == position) continue;
    num *= -indices[r];
    den *= xi - indices[r];
  }
  return num * den.inverse();
}

GroupElement compute_contribution(const Credential& cred, std::span<const Scalar> indices,
                                  const GroupParams& params) {
  require_round_size(indices, params);
  const Scalar l = lagrange_coeff_at_zero(indices, position_of(indices, cred.index));
  return scalar_mult(l * cred.private_share, params.generator());
}

GroupElement contribution_from_public(const PublicPair& pair, std::span<const Scalar> indices,
                                      const GroupParams& params) {
  require_round_size(indices, params);
  if (!(pair.public_point.group() == params.group)) {
    throw GroupMismatch("public point from a different group");
  }
  const Scalar l = lagrange_coeff_at_zero(indices, position_of(indices, pair.index));
  return scalar_mult(l, pair.public_point);
}

bool verify_group(std::span<const GroupElement> contributions, const GroupParams& params) {
  if (contributions.size() != params.threshold) {
    throw InvalidArgument("verify_group needs exactly " + std::to_string(params.threshold) +
                          " contributions, got " + std::to_string(contributions.size()));
  }
  GroupElement sum = params.group.identity();
  for (const GroupElement& c : contributions) sum += c;
  return sum == params.verification_point;
}

Scalar recover_group_key(std::span<const Share> shares, std::size_t threshold) {
  if (threshold == 0) throw InvalidArgument("threshold must be at least 1");
  if (shares.size() < threshold) {
    throw InvalidArgument("need at least " + std::to_string(threshold) + " shares, got " +
                          std::to_string(shares.size()));
  }
  std::vector<Scalar> indices;
  indices.reserve(shares.size());
  for (const Share& s : shares) indices.push_back(s.index);
  require_distinct_nonzero(indices);

  Scalar acc = Scalar::zero(indices.front().modulus());
  for (std::size_t i = 0; i < shares.size(); ++i) {
    acc += shares[i].value * lagrange_coeff_at_zero(indices, i);
  }
  return acc;
}

SymmetricKey kdf_from_point(const GroupElement& point) {
  const Bytes encoded = algebra::serialize(point);
  SymmetricKey out{};
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw Error("EVP_MD_CTX_new failed");
  unsigned int len = 0;
  const std::uint8_t sep = 0x00;
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, kPairwiseKdfLabel.data(), kPairwiseKdfLabel.size()) == 1 &&
                  EVP_DigestUpdate(ctx, &sep, 1) == 1 &&
                  EVP_DigestUpdate(ctx, encoded.data(), encoded.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, out.data(), &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok || len != out.size()) throw Error("SHA-256 failed");
  return out;
}

SymmetricKey derive_pairwise_key(const Credential& mine, const PublicPair& theirs,
                                 const GroupParams& params) {
  if (!(theirs.public_point.group() == params.group)) {
    throw GroupMismatch("peer public point from a different group");
  }
  if (theirs.public_point.is_identity()) {
    throw InvalidArgument("peer public point is the identity; key would be degenerate");
  }
  const GroupElement shared = scalar_mult(mine.private_share, theirs.public_point);
  if (shared.is_identity()) throw InvalidArgument("shared point is the identity");
  return kdf_from_point(shared);
}

}  // namespace swarmauth::groupauth
