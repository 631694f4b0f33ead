#include "swarmauth/sim/oracle.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "swarmauth/groupauth/dealer.hpp"
#include "swarmauth/groupauth/keywrap.hpp"
#include "swarmauth/protocol/adversary.hpp"

namespace swarmauth::sim {

namespace {

using algebra::Group;
using algebra::GroupElement;
using algebra::Scalar;
using groupauth::Credential;
using groupauth::Polynomial;

void fail(OracleCheck& c, const std::string& detail) {
  if (c.failures++ == 0) c.detail = detail;
}

OracleCheck curve_vs_toy(Rng& rng, std::size_t instances) {
  OracleCheck c{"curve-vs-toy", 0, 0, {}};
  const Group curve = Group::default_elliptic();
  const Group toy = Group::toy(curve.order());
  const GroupElement g = curve.generator();
  for (std::size_t t = 0; t < instances; ++t) {
    ++c.trials;
    const std::size_t m = rng.uniform_int(1, 8);
    const Polynomial poly = groupauth::gen_polynomial(curve, m, std::nullopt, rng);
    const auto cp = groupauth::make_group_params(curve, poly);
    const auto tp = groupauth::make_group_params(toy, poly);
    std::vector<Scalar> xs;
    while (xs.size() < m) {
      Scalar x = curve.random_scalar(rng);
      if (!x.is_zero() && std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
    }
    std::vector<GroupElement> cc, tc;
    std::vector<groupauth::Share> shares;
    for (const Scalar& x : xs) {
      const Credential ccred = groupauth::issue_credential(poly, x, cp);
      const Credential tcred = groupauth::issue_credential(poly, x, tp);
      cc.push_back(groupauth::compute_contribution(ccred, xs, cp));
      tc.push_back(groupauth::compute_contribution(tcred, xs, tp));
      shares.push_back({x, ccred.private_share});
      if (cc.back() != curve.scalar(tc.back().discrete_log()) * g) {
        fail(c, "contribution mismatch at instance " + std::to_string(t));
      }
    }
    if (cp.verification_point != curve.scalar(tp.verification_point.discrete_log()) * g) {
      fail(c, "verification point mismatch at instance " + std::to_string(t));
    }
    const bool cv = groupauth::verify_group(cc, cp);
    const bool tv = groupauth::verify_group(tc, tp);
    if (!cv || !tv) fail(c, "honest round rejected at instance " + std::to_string(t));
    cc.front() += g;
    tc.front() += toy.generator();
    if (groupauth::verify_group(cc, cp) || groupauth::verify_group(tc, tp)) {
      fail(c, "perturbed round accepted at instance " + std::to_string(t));
    }
    const Scalar key = groupauth::recover_group_key(shares, m);
    if (key != poly.group_key() || tp.verification_point.discrete_log() != key.value()) {
      fail(c, "recovery mismatch at instance " + std::to_string(t));
    }
  }
  return c;
}

long inv31_brute(long a) {
  for (long b = 1; b < 31; ++b)
    if (a * b % 31 == 1) return b;
  return 0;
}

OracleCheck gf31_lagrange(Rng& rng) {
  OracleCheck c{"gf31-lagrange", 0, 0, {}};
  const mpz_class q = 31;
  for (int t = 0; t < 1000; ++t) {
    ++c.trials;
    const std::size_t n = rng.uniform_int(1, 6);
    std::vector<long> xs;
    while (xs.size() < n) {
      const long x = static_cast<long>(rng.uniform_int(1, 30));
      if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
    }
    std::vector<Scalar> sx;
    for (long x : xs) sx.emplace_back(x, q);
    for (std::size_t i = 0; i < n; ++i) {
      long num = 1, den = 1;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        num = num * ((31 - xs[r]) % 31) % 31;
        den = den * (((xs[i] - xs[r]) % 31 + 31) % 31) % 31;
      }
      const long expect = num * inv31_brute(den) % 31;
      if (groupauth::lagrange_coeff_at_zero(sx, i).value() != expect) {
        fail(c, "weight mismatch in trial " + std::to_string(t));
      }
    }
  }
  return c;
}

OracleCheck gf31_recovery() {
  OracleCheck c{"gf31-recovery", 0, 0, {}};
  const mpz_class q = 31;
  auto share = [&](long x, long y) { return groupauth::Share{Scalar(x, q), Scalar(y, q)}; };
  const std::vector<groupauth::Share> a{share(1, 10), share(2, 13)};
  const std::vector<groupauth::Share> b{share(1, 11), share(2, 25), share(3, 16)};
  ++c.trials;
  if (groupauth::recover_group_key(a, 2).value() != 7) fail(c, "shares (1,10),(2,13) did not give 7");
  ++c.trials;
  if (groupauth::recover_group_key(b, 3).value() != 5) fail(c, "shares (1,11),(2,25),(3,16) did not give 5");
  return c;
}

OracleCheck gf31_secrecy(Rng& rng) {
  OracleCheck c{"gf31-secrecy", 0, 0, {}};
  for (int t = 0; t < 10; ++t) {
    ++c.trials;
    const long a0 = static_cast<long>(rng.uniform_int(0, 30));
    const long a1 = static_cast<long>(rng.uniform_int(0, 30));
    const long a2 = static_cast<long>(rng.uniform_int(0, 30));
    auto eval = [](long b0, long b1, long b2, long x) { return (b0 + b1 * x + b2 * x * x) % 31; };
    const long x1 = static_cast<long>(rng.uniform_int(1, 30));
    long x2 = x1;
    while (x2 == x1) x2 = static_cast<long>(rng.uniform_int(1, 30));
    const long y1 = eval(a0, a1, a2, x1);
    const long y2 = eval(a0, a1, a2, x2);
    std::array<int, 31> per_secret{};
    for (long b0 = 0; b0 < 31; ++b0)
      for (long b1 = 0; b1 < 31; ++b1)
        for (long b2 = 0; b2 < 31; ++b2)
          if (eval(b0, b1, b2, x1) == y1 && eval(b0, b1, b2, x2) == y2) ++per_secret[b0];
    if (!std::all_of(per_secret.begin(), per_secret.end(), [](int n) { return n == 1; })) {
      fail(c, "two shares did not leave every a_0 equally possible in trial " + std::to_string(t));
    }
  }
  return c;
}

OracleCheck gf31_exhaustive_unwrap(Rng& rng) {
  OracleCheck c{"gf31-exhaustive-unwrap", 0, 0, {}};
  const Group toy = Group::toy(31);
  for (int t = 0; t < 20; ++t) {
    ++c.trials;
    groupauth::ControlStation cs(toy, 3, rng);
    const Credential leader = cs.issue_next();
    const Credential captured = cs.issue_next();
    const auto key = groupauth::derive_pairwise_key(leader, captured.public_pair(), cs.params());
    const auto wrapped = groupauth::wrap_group_key(key, cs.group_key(), rng);
    const std::size_t hits = protocol::exhaustive_share_search(leader.public_pair(), wrapped, cs.params());
    if (hits != 1) fail(c, std::to_string(hits) + " candidate shares unwrapped in trial " + std::to_string(t));
  }
  return c;
}

}  // namespace

bool OracleReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
}

std::string OracleReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    if (c.passed()) {
      out << "PASS " << c.name << " (" << c.trials << " trials)\n";
    } else {
      out << "FAIL " << c.name << ": " << c.failures << "/" << c.trials << " failed; " << c.detail << '\n';
    }
  }
  return out.str();
}

OracleReport run_oracle_selftest(std::uint64_t seed, std::size_t instances) {
  Rng rng(seed);
  OracleReport r;
  r.checks.push_back(curve_vs_toy(rng, instances));
  r.checks.push_back(gf31_lagrange(rng));
  r.checks.push_back(gf31_recovery());
  r.checks.push_back(gf31_secrecy(rng));
  r.checks.push_back(gf31_exhaustive_unwrap(rng));
  return r;
}

}  // namespace swarmauth::sim
