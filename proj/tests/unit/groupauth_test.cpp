#include <gtest/gtest.h>

#include <set>

#include "swarmauth/error.hpp"
#include "swarmauth/groupauth/dealer.hpp"
#include "swarmauth/groupauth/files.hpp"
#include "swarmauth/groupauth/keywrap.hpp"
#include "swarmauth/groupauth/scheme.hpp"

namespace swarmauth::groupauth {
namespace {

// ---------------------------------------------------------------------------
// Plain-integer oracles over GF(31). Independent of the library code paths
// (no Horner, no Scalar, no inversion routine).

long mod31(long v) { return ((v % 31) + 31) % 31; }

long eval_direct(const std::vector<long>& coeffs, long x) {
  long acc = 0;
  long power = 1;
  for (long c : coeffs) {
    acc = mod31(acc + c * power);
    power = mod31(power * x);
  }
  return acc;
}

long inv31(long a) {
  for (long b = 1; b < 31; ++b)
    if (mod31(a * b) == 1) return b;
  return -1;
}

long lagrange31(const std::vector<long>& xs, std::size_t i) {
  long num = 1, den = 1;
  for (std::size_t r = 0; r < xs.size(); ++r) {
    if (r == i) continue;
    num = mod31(num * -xs[r]);
    den = mod31(den * (xs[i] - xs[r]));
  }
  return mod31(num * inv31(den));
}

Polynomial poly31(std::initializer_list<long> coeffs) {
  std::vector<Scalar> v;
  for (long c : coeffs) v.emplace_back(c, mpz_class(31));
  return Polynomial(std::move(v));
}

std::vector<Scalar> idx(const Group& g, std::initializer_list<long> xs) {
  std::vector<Scalar> out;
  for (long x : xs) out.push_back(g.scalar(x));
  return out;
}

class ToyFixture : public ::testing::Test {
 protected:
  Group g = Group::toy(31);
  Polynomial p = poly31({7, 3});
  GroupParams params = make_group_params(g, p);
};

// ---------------------------------------------------------------------------

TEST(PolynomialTest, ConstantPolynomialWhenThresholdIsOne) {
  Group g = Group::toy(31);
  Rng rng(1);
  Polynomial p = gen_polynomial(g, 1, g.scalar(7), rng);
  ASSERT_EQ(p.coefficients().size(), 1u);
  EXPECT_EQ(p.group_key().value(), 7);
}

TEST(PolynomialTest, SuppliedKeyIsLeadingCoefficient) {
  Group g = Group::toy(31);
  Rng rng(42);
  Polynomial p = gen_polynomial(g, 2, g.scalar(7), rng);
  ASSERT_EQ(p.threshold(), 2u);
  EXPECT_EQ(p.coefficients()[0].value(), 7);
  EXPECT_LT(p.coefficients()[1].value(), 31);
}

TEST(PolynomialTest, SameSeedSameCoefficients) {
  Group g = Group::default_elliptic();
  Rng a(99), b(99);
  EXPECT_EQ(gen_polynomial(g, 5, std::nullopt, a).coefficients(),
            gen_polynomial(g, 5, std::nullopt, b).coefficients());
}

TEST(PolynomialTest, ZeroThresholdRejected) {
  Group g = Group::toy(31);
  Rng rng(1);
  EXPECT_THROW(gen_polynomial(g, 0, std::nullopt, rng), InvalidArgument);
}

TEST(PolynomialTest, HornerMatchesDirectEvaluation) {
  Rng rng(3);
  Group g = Group::toy(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = rng.uniform_int(1, 8);
    Polynomial p = gen_polynomial(g, m, std::nullopt, rng);
    std::vector<long> coeffs;
    for (const Scalar& c : p.coefficients()) coeffs.push_back(c.value().get_si());
    for (long x = 0; x < 31; ++x) {
      ASSERT_EQ(p.evaluate(g.scalar(x)).value(), eval_direct(coeffs, x));
    }
  }
}

// ---------------------------------------------------------------------------

TEST_F(ToyFixture, IssueCredentialEvaluatesShares) {
  EXPECT_EQ(eval_direct({7, 3}, 1), 10);
  EXPECT_EQ(eval_direct({7, 3}, 2), 13);
  EXPECT_EQ(eval_direct({5, 2, 4}, 3), 16);

  Credential c1 = issue_credential(p, g.scalar(1), params);
  Credential c2 = issue_credential(p, g.scalar(2), params);
  EXPECT_EQ(c1.private_share.value(), 10);
  EXPECT_EQ(c2.private_share.value(), 13);
  EXPECT_EQ(c1.public_point, g.toy_element(10));

  Polynomial q = poly31({5, 2, 4});
  EXPECT_EQ(issue_credential(q, g.scalar(3), make_group_params(g, q)).private_share.value(), 16);
}

TEST_F(ToyFixture, IssueRejectsZeroAndDuplicateIndices) {
  EXPECT_THROW(issue_credential(p, g.scalar(0), params), InvalidArgument);
  auto dup = idx(g, {1, 2, 1});
  EXPECT_THROW(issue_credentials(p, dup, params), InvalidArgument);
  auto ok = idx(g, {1, 2, 3});
  EXPECT_EQ(issue_credentials(p, ok, params).size(), 3u);
}

TEST_F(ToyFixture, LagrangeWeightsAtZero) {
  EXPECT_EQ(lagrange31({1, 2}, 0), 2);
  EXPECT_EQ(lagrange31({1, 2}, 1), 30);
  EXPECT_EQ(lagrange31({1, 2, 3}, 2), 1);

  auto two = idx(g, {1, 2});
  auto three = idx(g, {1, 2, 3});
  EXPECT_EQ(lagrange_coeff_at_zero(two, 0).value(), 2);
  EXPECT_EQ(lagrange_coeff_at_zero(two, 1).value(), 30);
  EXPECT_EQ(lagrange_coeff_at_zero(three, 2).value(), 1);
}

TEST_F(ToyFixture, LagrangeMatchesPlainOracleOnRandomSets) {
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t m = rng.uniform_int(1, 8);
    std::set<long> chosen;
    while (chosen.size() < m) chosen.insert(static_cast<long>(rng.uniform_int(1, 30)));
    std::vector<long> xs(chosen.begin(), chosen.end());
    std::vector<Scalar> sx;
    for (long x : xs) sx.push_back(g.scalar(x));
    for (std::size_t i = 0; i < m; ++i) {
      ASSERT_EQ(lagrange_coeff_at_zero(sx, i).value(), lagrange31(xs, i));
    }
  }
}

TEST_F(ToyFixture, LagrangeRejectsBadInput) {
  auto dup = idx(g, {1, 1});
  EXPECT_THROW(lagrange_coeff_at_zero(dup, 0), InvalidArgument);
  auto zero = idx(g, {0, 1});
  EXPECT_THROW(lagrange_coeff_at_zero(zero, 1), InvalidArgument);
  EXPECT_THROW(lagrange_coeff_at_zero(std::vector<Scalar>{}, 0), InvalidArgument);
  auto two = idx(g, {1, 2});
  EXPECT_THROW(lagrange_coeff_at_zero(two, 2), InvalidArgument);
}

TEST_F(ToyFixture, ContributionsAndSumCheck) {
  auto round = idx(g, {1, 2});
  Credential c1 = issue_credential(p, g.scalar(1), params);
  Credential c2 = issue_credential(p, g.scalar(2), params);
  // 2*10 mod 31 = 20, 30*13 mod 31 = 18
  EXPECT_EQ(mod31(2 * 10), 20);
  EXPECT_EQ(mod31(30 * 13), 18);
  GroupElement e1 = compute_contribution(c1, round, params);
  GroupElement e2 = compute_contribution(c2, round, params);
  EXPECT_EQ(e1, g.toy_element(20));
  EXPECT_EQ(e2, g.toy_element(18));
  EXPECT_EQ(contribution_from_public({g.scalar(1), g.toy_element(10)}, round, params), g.toy_element(20));

  EXPECT_EQ(params.verification_point, g.toy_element(7));
  std::vector<GroupElement> cs{g.toy_element(20), g.toy_element(18)};
  EXPECT_TRUE(verify_group(cs, params));
}

TEST_F(ToyFixture, ContributionPreconditions) {
  Credential c1 = issue_credential(p, g.scalar(1), params);
  auto wrong_count = idx(g, {1, 2, 3});
  EXPECT_THROW(compute_contribution(c1, wrong_count, params), InvalidArgument);
  auto missing = idx(g, {2, 3});
  EXPECT_THROW(compute_contribution(c1, missing, params), InvalidArgument);
  EXPECT_THROW(contribution_from_public(c1.public_pair(), missing, params), InvalidArgument);
}

TEST_F(ToyFixture, VerifyGroupRejectsWrongCount) {
  std::vector<GroupElement> one{g.toy_element(7)};
  EXPECT_THROW(verify_group(one, params), InvalidArgument);
  std::vector<GroupElement> three{g.toy_element(7), g.identity(), g.identity()};
  EXPECT_THROW(verify_group(three, params), InvalidArgument);
}

TEST_F(ToyFixture, TamperedPublicPointFailsSumCheck) {
  auto round = idx(g, {1, 2});
  Credential c1 = issue_credential(p, g.scalar(1), params);
  Credential c2 = issue_credential(p, g.scalar(2), params);
  PublicPair tampered = c2.public_pair();
  tampered.public_point += g.generator();
  std::vector<GroupElement> cs{compute_contribution(c1, round, params),
                               contribution_from_public(tampered, round, params)};
  EXPECT_NE(cs[1], compute_contribution(c2, round, params));
  EXPECT_FALSE(verify_group(cs, params));
}

// Exhaustive version of the soundness claim: replacing one contribution by
// each of the q possible elements passes for exactly one of them (the honest
// one).
TEST_F(ToyFixture, ExactlyOneReplacementPassesOnGf31) {
  auto round = idx(g, {1, 2});
  Credential c1 = issue_credential(p, g.scalar(1), params);
  GroupElement honest_first = compute_contribution(c1, round, params);
  Credential c2 = issue_credential(p, g.scalar(2), params);
  int passes = 0;
  for (long v = 0; v < 31; ++v) {
    std::vector<GroupElement> cs{honest_first, g.toy_element(v)};
    if (verify_group(cs, params)) {
      ++passes;
      EXPECT_EQ(g.toy_element(v), compute_contribution(c2, round, params));
    }
  }
  EXPECT_EQ(passes, 1);
}

// Statistical soundness with a large-order toy group: the accidental pass
// probability is 1/q, effectively zero.
TEST(SoundnessTest, RandomReplacementFailsOnLargeToyGroup) {
  Group g = Group::toy(mpz_class("2305843009213693951"));  // 2^61 - 1
  Rng rng(2718);
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = rng.uniform_int(1, 8);
    ControlStation cs(g, m, rng);
    std::vector<Credential> creds;
    for (std::size_t i = 0; i < m; ++i) creds.push_back(cs.issue_next());
    std::vector<Scalar> round;
    for (const auto& c : creds) round.push_back(c.index);
    std::vector<GroupElement> contribs;
    for (const auto& c : creds) contribs.push_back(compute_contribution(c, round, cs.params()));
    ASSERT_TRUE(verify_group(contribs, cs.params()));
    contribs[rng.uniform_int(0, m - 1)] = g.toy_element(rng.uniform_below(g.order()));
    if (!verify_group(contribs, cs.params())) ++failures;
  }
  EXPECT_GE(failures, 999);
}

TEST(RecoverTest, WorkedExamplesOverGf31) {
  const mpz_class q = 31;
  EXPECT_EQ(mod31(2 * 10 + 30 * 13), 7);
  EXPECT_EQ(mod31(3 * 11 + 28 * 25 + 1 * 16), 5);
  EXPECT_EQ(eval_direct({5, 2, 4}, 1), 11);
  EXPECT_EQ(eval_direct({5, 2, 4}, 2), 25);

  std::vector<Share> two{{Scalar(1, q), Scalar(10, q)}, {Scalar(2, q), Scalar(13, q)}};
  EXPECT_EQ(recover_group_key(two, 2).value(), 7);
  std::vector<Share> three{
      {Scalar(1, q), Scalar(11, q)}, {Scalar(2, q), Scalar(25, q)}, {Scalar(3, q), Scalar(16, q)}};
  EXPECT_EQ(recover_group_key(three, 3).value(), 5);
  std::vector<Share> one{{Scalar(9, q), Scalar(4, q)}};
  EXPECT_EQ(recover_group_key(one, 1).value(), 4);
}

TEST(RecoverTest, Preconditions) {
  const mpz_class q = 31;
  std::vector<Share> two{{Scalar(1, q), Scalar(10, q)}, {Scalar(2, q), Scalar(13, q)}};
  EXPECT_THROW(recover_group_key(two, 3), InvalidArgument);
  std::vector<Share> dup{{Scalar(1, q), Scalar(10, q)}, {Scalar(1, q), Scalar(13, q)}};
  EXPECT_THROW(recover_group_key(dup, 2), InvalidArgument);
}

TEST(RecoverTest, InterpolationIdentityOnRandomPolynomials) {
  Group g = Group::default_elliptic();
  Rng rng(31337);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = rng.uniform_int(1, 8);
    Polynomial poly = gen_polynomial(g, m, std::nullopt, rng);
    std::vector<Share> shares;
    std::set<std::string> used;
    while (shares.size() < m) {
      Scalar x = g.random_scalar(rng);
      if (x.is_zero() || !used.insert(x.to_decimal()).second) continue;
      shares.push_back({x, poly.evaluate(x)});
    }
    ASSERT_EQ(recover_group_key(shares, m), poly.group_key());
  }
}

// Two shares of a degree-2 polynomial are consistent with every possible a_0.
TEST(SecrecyTest, TwoSharesRevealNothingWhenThresholdIsThree) {
  const mpz_class q = 31;
  for (long y1 = 0; y1 < 31; ++y1) {
    for (long y2 = 0; y2 < 31; ++y2) {
      std::set<long> candidates;
      for (long y3 = 0; y3 < 31; ++y3) {
        std::vector<Share> s{{Scalar(1, q), Scalar(y1, q)},
                             {Scalar(2, q), Scalar(y2, q)},
                             {Scalar(3, q), Scalar(y3, q)}};
        candidates.insert(recover_group_key(s, 3).value().get_si());
      }
      ASSERT_EQ(candidates.size(), 31u);
    }
  }
}

// ---------------------------------------------------------------------------

TEST(ContributionEquivalenceTest, PublicMatchesPrivateOnCurve) {
  Group g = Group::default_elliptic();
  Rng rng(5150);
  int checked = 0;
  while (checked < 100) {
    const std::size_t m = rng.uniform_int(1, 5);
    ControlStation cs(g, m, rng);
    std::vector<Credential> creds;
    for (std::size_t i = 0; i < m; ++i) creds.push_back(cs.issue_next());
    std::vector<Scalar> round;
    for (const auto& c : creds) round.push_back(c.index);
    std::vector<GroupElement> contribs;
    for (const auto& c : creds) {
      GroupElement priv = compute_contribution(c, round, cs.params());
      ASSERT_EQ(priv, contribution_from_public(c.public_pair(), round, cs.params()));
      contribs.push_back(priv);
      ++checked;
    }
    ASSERT_TRUE(verify_group(contribs, cs.params()));
  }
}

TEST(PairwiseKeyTest, SymmetricOnRandomCurveCredentials) {
  Group g = Group::default_elliptic();
  Rng rng(8);
  ControlStation cs(g, 3, rng);
  std::vector<Credential> creds;
  for (int i = 0; i < 15; ++i) creds.push_back(cs.issue_next());
  int pairs = 0;
  for (std::size_t i = 0; i < creds.size() && pairs < 100; ++i) {
    for (std::size_t j = i + 1; j < creds.size() && pairs < 100; ++j, ++pairs) {
      ASSERT_EQ(derive_pairwise_key(creds[i], creds[j].public_pair(), cs.params()),
                derive_pairwise_key(creds[j], creds[i].public_pair(), cs.params()));
    }
  }
  EXPECT_EQ(pairs, 100);
}

TEST_F(ToyFixture, PairwiseSharedPointOnToyGroup) {
  Credential c1 = issue_credential(p, g.scalar(1), params);
  Credential c2 = issue_credential(p, g.scalar(2), params);
  EXPECT_EQ(mod31(10 * 13), 6);
  const SymmetricKey expected = kdf_from_point(g.toy_element(6));
  EXPECT_EQ(derive_pairwise_key(c1, c2.public_pair(), params), expected);
  EXPECT_EQ(derive_pairwise_key(c2, c1.public_pair(), params), expected);
}

// Knowing both public pairs but neither private share, the only scalar s for
// which KDF(s · p(x_j)P) gives the pairwise key is p(x_i) itself.
TEST_F(ToyFixture, ExhaustiveSearchNeedsThePrivateShare) {
  Credential c1 = issue_credential(p, g.scalar(1), params);
  Credential c2 = issue_credential(p, g.scalar(2), params);
  const SymmetricKey key = derive_pairwise_key(c1, c2.public_pair(), params);
  std::vector<long> hits;
  for (long s = 0; s < 31; ++s) {
    GroupElement shared = scalar_mult(g.scalar(s), c2.public_point);
    if (shared.is_identity()) continue;
    if (kdf_from_point(shared) == key) hits.push_back(s);
  }
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0], 10);
  // Points reachable from public data with group operations alone.
  std::vector<GroupElement> public_points{c1.public_point, c2.public_point, params.verification_point,
                                          g.generator(), c1.public_point + c2.public_point};
  for (const auto& pt : public_points) EXPECT_NE(kdf_from_point(pt), key);
}

TEST_F(ToyFixture, DegeneratePeerPointRejected) {
  Credential c1 = issue_credential(p, g.scalar(1), params);
  EXPECT_THROW(derive_pairwise_key(c1, {g.scalar(5), g.identity()}, params), InvalidArgument);
}

// ---------------------------------------------------------------------------

class KeyWrapTest : public ::testing::Test {
 protected:
  Group g = Group::default_elliptic();
  Rng rng{77};
  SymmetricKey key = [] {
    SymmetricKey k{};
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = static_cast<std::uint8_t>(i * 7 + 1);
    return k;
  }();
};

TEST_F(KeyWrapTest, RoundTrip) {
  WrappedGroupKey w = wrap_group_key(key, g.scalar(7), rng);
  EXPECT_EQ(w.nonce.size(), kNonceSize);
  EXPECT_EQ(w.tag.size(), 16u);
  EXPECT_EQ(unwrap_group_key(key, w, g.order()), g.scalar(7));
}

TEST_F(KeyWrapTest, WrongKeyFails) {
  WrappedGroupKey w = wrap_group_key(key, g.scalar(7), rng);
  SymmetricKey other = key;
  other[0] ^= 1;
  EXPECT_THROW(unwrap_group_key(other, w, g.order()), UnwrapError);
  EXPECT_FALSE(try_unwrap_group_key(other, w, g.order()).has_value());
}

TEST_F(KeyWrapTest, EveryBitFlipIsDetected) {
  WrappedGroupKey w = wrap_group_key(key, g.random_scalar(rng), rng);
  auto flip_all = [&](Bytes WrappedGroupKey::*field) {
    for (std::size_t byte = 0; byte < (w.*field).size(); ++byte) {
      for (int bit = 0; bit < 8; ++bit) {
        WrappedGroupKey bad = w;
        (bad.*field)[byte] ^= static_cast<std::uint8_t>(1u << bit);
        ASSERT_THROW(unwrap_group_key(key, bad, g.order()), UnwrapError);
      }
    }
  };
  flip_all(&WrappedGroupKey::ciphertext);
  flip_all(&WrappedGroupKey::tag);
  flip_all(&WrappedGroupKey::nonce);
}

TEST_F(KeyWrapTest, FreshNoncePerWrap) {
  WrappedGroupKey a = wrap_group_key(key, g.scalar(7), rng);
  WrappedGroupKey b = wrap_group_key(key, g.scalar(7), rng);
  EXPECT_NE(a.nonce, b.nonce);
  EXPECT_NE(a.ciphertext, b.ciphertext);
}

TEST_F(KeyWrapTest, PairwiseKeyWrapsForPeerOnly) {
  ControlStation cs(g, 2, rng);
  Credential a = cs.issue_next(), b = cs.issue_next(), c = cs.issue_next();
  WrappedGroupKey w = wrap_group_key(derive_pairwise_key(a, b.public_pair(), cs.params()),
                                     cs.group_key(), rng);
  EXPECT_EQ(unwrap_group_key(derive_pairwise_key(b, a.public_pair(), cs.params()), w, g.order()),
            cs.group_key());
  EXPECT_THROW(unwrap_group_key(derive_pairwise_key(c, a.public_pair(), cs.params()), w, g.order()),
               UnwrapError);
}

// ---------------------------------------------------------------------------

TEST(ControlStationTest, ConsecutiveIndicesAndVerificationPoint) {
  Group g = Group::default_elliptic();
  Rng rng(4);
  ControlStation cs(g, 3, rng);
  EXPECT_EQ(cs.params().verification_point, scalar_mult(cs.group_key(), g.generator()));
  for (long i = 1; i <= 4; ++i) EXPECT_EQ(cs.issue_next().index.value(), i);
}

TEST(ControlStationTest, SkipsIndicesWithZeroShare) {
  Group g = Group::toy(31);
  // Find a seed whose polynomial 7 + a_1 x vanishes at some x in 1..4.
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    Rng rng(seed);
    ControlStation cs(g, 2, rng, g.scalar(7));
    long root = -1;
    for (long x = 1; x <= 4 && root < 0; ++x) {
      if (cs.polynomial().evaluate(g.scalar(x)).is_zero()) root = x;
    }
    if (root < 0) continue;
    for (long x = 1; x <= 5; ++x) {
      if (x == root) continue;
      Credential c = cs.issue_next();
      EXPECT_EQ(c.index.value(), x);
      EXPECT_FALSE(c.private_share.is_zero());
    }
    return;
  }
  FAIL() << "no seed produced a root";
}

TEST(ControlStationTest, ToyGroupRunsOutOfIndices) {
  Group g = Group::toy(5);
  Rng rng(1);
  ControlStation cs(g, 1, rng, g.scalar(2));
  for (int i = 0; i < 4; ++i) cs.issue_next();
  EXPECT_THROW(cs.issue_next(), InvalidArgument);
}

// ---------------------------------------------------------------------------

TEST(FilesTest, ParamsAndCredentialsRoundTrip) {
  for (Group g : {Group::default_elliptic(), Group::toy(31)}) {
    Rng rng(10);
    ControlStation cs(g, 3, rng);
    std::vector<Credential> creds;
    for (int i = 0; i < 4; ++i) creds.push_back(cs.issue_next());
    GroupParams params = group_params_from_json(group_params_to_json(cs.params()));
    EXPECT_EQ(params.group, g);
    EXPECT_EQ(params.threshold, 3u);
    EXPECT_EQ(params.verification_point, cs.params().verification_point);
    auto back = credentials_from_json(credentials_to_json(creds), params);
    ASSERT_EQ(back.size(), creds.size());
    for (std::size_t i = 0; i < creds.size(); ++i) {
      EXPECT_EQ(back[i].index, creds[i].index);
      EXPECT_EQ(back[i].private_share, creds[i].private_share);
      EXPECT_EQ(back[i].public_point, creds[i].public_point);
    }
  }
}

TEST(FilesTest, InconsistentCredentialRejected) {
  Group g = Group::toy(31);
  Rng rng(10);
  ControlStation cs(g, 2, rng);
  Credential c = cs.issue_next();
  c.private_share = c.private_share + g.scalar(1);
  EXPECT_THROW(credentials_from_json(credentials_to_json({c}), cs.params()), ConfigError);
  EXPECT_THROW(credentials_from_json("{}", cs.params()), ConfigError);
  EXPECT_THROW(group_params_from_json("{\"group\":{\"kind\":\"toy\",\"q\":\"32\"}}"), ConfigError);
}

}  // namespace
}  // namespace swarmauth::groupauth
