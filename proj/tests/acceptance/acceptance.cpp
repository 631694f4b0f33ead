// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "swarmauth/groupauth/dealer.hpp"
#include "swarmauth/groupauth/scheme.hpp"
#include "swarmauth/latency/model.hpp"
#include "swarmauth/protocol/adversary.hpp"
#include "swarmauth/protocol/scenarios.hpp"
#include "swarmauth/sim/runner.hpp"

namespace {

using namespace swarmauth;
using algebra::Group;
using algebra::GroupElement;
using algebra::Scalar;
using protocol::Outcome;
using protocol::ScenarioKind;
using sim::AdversaryKind;
using sim::GroupChoice;

const latency::LatencyModel kModel;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---- 1-4: closed forms --------------------------------------------------------

Verdict nr_latency() {
  const double v = latency::nr_auth_latency(kModel);
  return {std::abs(v - 81.6) < 1e-9 && std::abs(v - 82.0) <= 0.5,
          "model " + fmt(v) + " ms, reference 82 ms, |diff| " + fmt(std::abs(v - 82.0))};
}

Verdict group_latency() {
  const double v5 = latency::group_auth_latency(5, kModel);
  double worst = 0;
  for (std::size_t m = 1; m <= 100; ++m) {
    const double approx = 1.2 * static_cast<double>(m);
    worst = std::max(worst, std::abs(latency::group_auth_latency(m, kModel) - approx) / approx);
  }
  return {std::abs(v5 - 6.06) < 1e-9 && std::abs(v5 - 6.0) <= 0.1 && worst <= 0.02,
          "m=5: " + fmt(v5) + " ms; max relative gap to 1.2m over m=1..100: " + fmt(100 * worst) + "%"};
}

Verdict swarm_latency() {
  const double v = latency::swarm_auth_latency(100, 5, kModel);
  return {std::abs(v - 66.06) < 1e-9 && std::abs(v - 66.0) <= 0.5,
          "n=100, m=5: " + fmt(v) + " ms, reference 66 ms"};
}

Verdict crossovers() {
  const latency::Crossovers c = latency::compute_crossovers(5, kModel);
  const bool ok = c.auth >= 65 && c.auth <= 70 && c.handover >= 39 && c.handover <= 42 &&
                  c.swarm_n >= 124 && c.swarm_n <= 130;
  return {ok, "auth " + std::to_string(c.auth) + " in [65,70], handover " + std::to_string(c.handover) +
                  " in [39,42], swarm n at m=5 " + std::to_string(c.swarm_n) + " in [124,130]"};
}

// ---- 5: completeness ------------------------------------------------------------

sim::ScenarioConfig make_config(ScenarioKind k, std::size_t m, GroupChoice g, AdversaryKind a,
                                std::uint64_t seed) {
  sim::ScenarioConfig c;
  c.scenario = k;
  c.m = m;
  c.guard_count = m - 1;
  c.network_count = m - 1;
  c.group = g;
  c.adversary = a;
  c.seed = seed;
  return c;
}

constexpr ScenarioKind kGroupScenarios[] = {ScenarioKind::Join, ScenarioKind::TerrestrialHandover,
                                            ScenarioKind::AerialHandover};

Verdict completeness() {
  std::size_t runs = 0, accepted = 0;
  double slowest_ms = 0;
  std::string first_failure;
  for (GroupChoice g : {GroupChoice::Curve, GroupChoice::Toy}) {
    for (ScenarioKind k : kGroupScenarios) {
      for (std::size_t m = 2; m <= 8; ++m) {
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
          const auto t0 = std::chrono::steady_clock::now();
          const sim::RunResult r = sim::run_scenario(make_config(k, m, g, AdversaryKind::None, seed));
          const double ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
          slowest_ms = std::max(slowest_ms, ms);
          ++runs;
          if (r.report.exit_code == sim::kExitAccepted && r.trace.outcome == Outcome::Accepted) {
            ++accepted;
          } else if (first_failure.empty()) {
            first_failure = "; first failure " + r.report.scenario + " m=" + std::to_string(m) +
                            " seed=" + std::to_string(seed) + ": " + r.report.verdict;
          }
        }
      }
    }
  }
  return {accepted == runs && slowest_ms < 1000,
          std::to_string(accepted) + "/" + std::to_string(runs) +
              " honest runs accepted (100 seeds x m=2..8 x 2 groups x 3 scenarios); slowest run " +
              fmt(slowest_ms) + " ms" + first_failure};
}

// ---- 6: attacks ------------------------------------------------------------------

// Key confidentiality rests on discrete-log hardness, so attacks run on the curve.
Verdict attacks() {
  struct Attack {
    const char* name;
    ScenarioKind scenario;
    AdversaryKind adversary;
  };
  const Attack list[] = {
      {"replay/join", ScenarioKind::Join, AdversaryKind::Replay},
      {"fake-bs/terrestrial", ScenarioKind::TerrestrialHandover, AdversaryKind::FakeBs},
      {"fake-bs/aerial", ScenarioKind::AerialHandover, AdversaryKind::FakeBs},
  };
  bool ok = true;
  std::ostringstream detail;
  for (const Attack& a : list) {
    std::size_t keys = 0, exit3 = 0, sum_pass = 0, excluded = 0;
    const std::size_t trials = 1000;
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t m = 2 + t % 7;
      const sim::RunResult r =
          sim::run_scenario(make_config(a.scenario, m, GroupChoice::Curve, a.adversary, 50'000 + t));
      if (r.report.adversary_obtained_group_key || r.report.adversary_derived_pairwise_key) ++keys;
      if (r.report.exit_code == sim::kExitInvariant) ++exit3;
      if (r.report.sum_check_passed) ++sum_pass;
      if (r.trace.outcome == Outcome::Excluded) ++excluded;
    }
    // A captured honest pair is a valid pair, so it passes the sum check and
    // is stopped only at key delivery.
    ok = ok && keys == 0 && exit3 == 0 && sum_pass == trials && excluded == trials;
    detail << a.name << ": key " << keys << "/" << trials << ", exit 3 " << exit3 << ", sum check passed "
           << sum_pass << ", excluded " << excluded << "; ";
  }
  std::string d = detail.str();
  d.resize(d.size() - 2);
  return {ok, d};
}

// ---- 7: oracle equivalence ---------------------------------------------------------

mpz_class mod(const mpz_class& v, const mpz_class& q) {
  mpz_class r = v % q;
  if (r < 0) r += q;
  return r;
}

mpz_class inverse(const mpz_class& a, const mpz_class& q) {
  mpz_class r;
  mpz_invert(r.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
  return r;
}

// Plain GMP arithmetic, independent of the library's Scalar and Lagrange code.
mpz_class eval_poly(const std::vector<mpz_class>& a, const mpz_class& x, const mpz_class& q) {
  mpz_class acc = 0, power = 1;
  for (const mpz_class& c : a) {
    acc = mod(acc + c * power, q);
    power = mod(power * x, q);
  }
  return acc;
}

mpz_class weight(const std::vector<mpz_class>& xs, std::size_t i, const mpz_class& q) {
  mpz_class num = 1, den = 1;
  for (std::size_t r = 0; r < xs.size(); ++r) {
    if (r == i) continue;
    num = mod(num * -xs[r], q);
    den = mod(den * (xs[i] - xs[r]), q);
  }
  return mod(num * inverse(den, q), q);
}

Verdict oracle_equivalence() {
  const Group curve = Group::default_elliptic();
  const Group toy = Group::toy(curve.order());
  const mpz_class q = curve.order();
  const GroupElement g = curve.generator();
  Rng rng(20240601);
  std::size_t mismatches = 0;
  const std::size_t instances = 1000;
  for (std::size_t t = 0; t < instances; ++t) {
    const std::size_t m = 1 + rng.uniform_int(0, 7);
    std::vector<mpz_class> a;
    std::vector<Scalar> coeffs;
    for (std::size_t i = 0; i < m; ++i) {
      a.push_back(rng.uniform_below(q));
      coeffs.emplace_back(a.back(), q);
    }
    const groupauth::Polynomial poly(coeffs);
    const auto cp = groupauth::make_group_params(curve, poly);
    const auto tp = groupauth::make_group_params(toy, poly);
    std::vector<mpz_class> xs;
    while (xs.size() < m) {
      const mpz_class x = 1 + rng.uniform_below(q - 1);
      if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
    }
    std::vector<Scalar> sx;
    for (const auto& x : xs) sx.emplace_back(x, q);

    bool bad = cp.verification_point != Scalar(a[0], q) * g || tp.verification_point.discrete_log() != a[0];
    std::vector<GroupElement> cc;
    std::vector<groupauth::Share> shares;
    mpz_class sum = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const mpz_class share = eval_poly(a, xs[i], q);
      const mpz_class expect = mod(weight(xs, i, q) * share, q);
      sum = mod(sum + expect, q);
      const auto ccred = groupauth::issue_credential(poly, sx[i], cp);
      const auto tcred = groupauth::issue_credential(poly, sx[i], tp);
      bad = bad || ccred.private_share.value() != share;
      const GroupElement c_priv = groupauth::compute_contribution(ccred, sx, cp);
      const GroupElement c_pub = groupauth::contribution_from_public(ccred.public_pair(), sx, cp);
      const GroupElement t_priv = groupauth::compute_contribution(tcred, sx, tp);
      const GroupElement t_pub = groupauth::contribution_from_public(tcred.public_pair(), sx, tp);
      bad = bad || t_priv.discrete_log() != expect || t_pub.discrete_log() != expect;
      bad = bad || c_priv != Scalar(expect, q) * g || c_pub != c_priv;
      cc.push_back(c_priv);
      shares.push_back({sx[i], ccred.private_share});
    }
    bad = bad || sum != a[0] || !groupauth::verify_group(cc, cp);
    bad = bad || groupauth::recover_group_key(shares, m).value() != a[0];
    cc.front() = cc.front() + g;
    bad = bad || groupauth::verify_group(cc, cp);
    if (bad) ++mismatches;
  }

  auto recover31 = [](std::vector<std::pair<long, long>> pts) {
    const mpz_class q31 = 31;
    std::vector<groupauth::Share> s;
    for (auto [x, y] : pts) s.push_back({Scalar(x, q31), Scalar(y, q31)});
    return groupauth::recover_group_key(s, pts.size()).value();
  };
  const mpz_class ex1 = recover31({{1, 10}, {2, 13}});
  const mpz_class ex2 = recover31({{1, 11}, {2, 25}, {3, 16}});
  return {mismatches == 0 && ex1 == 7 && ex2 == 5,
          std::to_string(instances - mismatches) + "/" + std::to_string(instances) +
              " curve instances match the scalar oracle; GF(31) examples give " + ex1.get_str() + " and " +
              ex2.get_str() + " (expected 7 and 5)"};
}

// ---- 8: secrecy below threshold -------------------------------------------------------

Verdict secrecy() {
  const Group toy = Group::toy(31);
  Rng rng(8);
  std::size_t trials = 0, failures = 0;
  for (int t = 0; t < 20; ++t) {
    ++trials;
    groupauth::ControlStation cs(toy, 3, rng);
    const auto c1 = cs.issue_next();
    const auto c2 = cs.issue_next();
    const long x1 = c1.index.value().get_si(), y1 = c1.private_share.value().get_si();
    const long x2 = c2.index.value().get_si(), y2 = c2.private_share.value().get_si();
    std::vector<int> per_secret(31, 0);
    for (long b0 = 0; b0 < 31; ++b0)
      for (long b1 = 0; b1 < 31; ++b1)
        for (long b2 = 0; b2 < 31; ++b2) {
          const bool fits1 = (b0 + b1 * x1 + b2 * x1 * x1) % 31 == y1;
          const bool fits2 = (b0 + b1 * x2 + b2 * x2 * x2) % 31 == y2;
          if (fits1 && fits2) ++per_secret[b0];
        }
    if (!std::all_of(per_secret.begin(), per_secret.end(), [](int n) { return n == 1; })) ++failures;
  }
  return {failures == 0, std::to_string(trials - failures) + "/" + std::to_string(trials) +
                             " dealer share pairs leave all 31 values of a_0 possible, one polynomial each"};
}

// ---- 9: trace vs model -------------------------------------------------------------

double expected_total(ScenarioKind k, std::size_t m, Outcome o) {
  const double hop = kModel.drone_hop, sm = kModel.ec_scalar_mult;
  const double ga = static_cast<double>(m) * (hop + sm);
  const bool join = k == ScenarioKind::Join;
  switch (o) {
    case Outcome::Accepted: return ga + (join ? 3 : 2) * hop + 2 * sm;
    case Outcome::Excluded:
    case Outcome::Compromised: return ga + (join ? 3 : 2) * hop + sm;
    case Outcome::Rejected: return join ? ga + hop : ga;
    case Outcome::Malformed: return join ? 2 * hop : static_cast<double>(m) * hop;
    default: return NAN;
  }
}

Verdict trace_model() {
  std::size_t cases = 0, bad = 0;
  double worst = 0;
  std::string first;
  auto check = [&](const protocol::ScenarioTrace& tr, double expect, const std::string& label) {
    ++cases;
    const latency::TraceCheck c = latency::check_trace_against_model(tr, kModel);
    const double gap = std::abs(tr.total_ms() - expect);
    worst = std::max(worst, gap);
    if (!c.ok || gap > latency::kTraceTolerance || std::abs(c.predicted_ms - expect) > latency::kTraceTolerance) {
      ++bad;
      if (first.empty()) first = "; first mismatch " + label + ": " + c.reason;
    }
  };

  for (GroupChoice g : {GroupChoice::Curve, GroupChoice::Toy}) {
    for (ScenarioKind k : kGroupScenarios) {
      const AdversaryKind adv = k == ScenarioKind::Join ? AdversaryKind::Replay : AdversaryKind::FakeBs;
      for (std::size_t m = 2; m <= 8; ++m) {
        for (AdversaryKind a : {AdversaryKind::None, adv}) {
          auto cfg = make_config(k, m, g, a, 900 + m);
          if (g == GroupChoice::Toy) cfg.toy_q = 1009;
          const sim::RunResult r = sim::run_scenario(cfg);
          check(r.trace, expected_total(k, m, r.trace.outcome), r.report.scenario + " m=" + std::to_string(m));
        }
      }
    }
  }

  // Rejected and malformed participants, driven through the protocol API.
  for (std::size_t m = 2; m <= 8; ++m) {
    for (ScenarioKind k : kGroupScenarios) {
      for (int variant = 0; variant < 2; ++variant) {
        const bool malformed = variant == 1;
        if (malformed && k == ScenarioKind::TerrestrialHandover) continue;  // the BS never announces
        Rng rng(m * 10 + variant);
        groupauth::ControlStation cs(Group::default_elliptic(), m, rng);
        const bool join = k == ScenarioKind::Join;
        protocol::SwarmState swarm = protocol::SwarmState::provision(cs, join ? m - 1 : 0, join ? 0 : m - 1, 0);
        protocol::Participant p = protocol::forged_participant("party", swarm.params(), rng);
        p.corrupt_encoding = malformed;
        sim::SimNet net(kModel);
        protocol::ScenarioResult r =
            k == ScenarioKind::Join                  ? protocol::run_join_scenario(swarm, p, net)
            : k == ScenarioKind::TerrestrialHandover ? protocol::run_terrestrial_handover(swarm, p, net)
                                                     : protocol::run_aerial_handover(swarm, p, net);
        check(r.trace, expected_total(k, m, r.outcome()),
              std::string(protocol::scenario_kind_name(k)) + (malformed ? " malformed" : " forged"));
      }
    }
  }

  sim::SimNet nr(kModel);
  check(protocol::run_nr_baseline_auth(nr), 81.6, "nr_baseline");

  return {bad == 0, std::to_string(cases - bad) + "/" + std::to_string(cases) +
                        " traces equal the closed form; largest gap " + fmt(worst) + " ms" + first};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
  };
  const Criterion criteria[] = {
      {1, "nr-authentication-latency", nr_latency},
      {2, "group-authentication-latency", group_latency},
      {3, "swarm-authentication-latency", swarm_latency},
      {4, "crossovers", crossovers},
      {5, "protocol-completeness", completeness},
      {6, "attack-prevention", attacks},
      {7, "oracle-equivalence", oracle_equivalence},
      {8, "below-threshold-secrecy", secrecy},
      {9, "trace-model-consistency", trace_model},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %d %s: %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
