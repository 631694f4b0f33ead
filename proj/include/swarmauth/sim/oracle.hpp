#pragma once

// Cross-checks of the curve implementation against the toy group, whose
// elements are their own discrete logs and can be verified with plain
// modular arithmetic.

#include <cstdint>
#include <string>
#include <vector>

namespace swarmauth::sim {

struct OracleCheck {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::string detail;  // first failure, if any

  bool passed() const { return failures == 0 && trials > 0; }
};

struct OracleReport {
  std::vector<OracleCheck> checks;

  bool passed() const;
  /// One "PASS name (trials)" / "FAIL name: detail" line per check.
  std::string to_text() const;
};

/// Runs:
///  * curve-vs-toy: `instances` random rounds; each curve contribution must
///    equal (toy contribution's log)·G, and verification and key recovery
///    must agree. The toy group uses the curve order.
///  * gf31-lagrange: Lagrange weights against a brute-force inverse.
///  * gf31-recovery: the worked recovery examples over GF(31).
///  * gf31-secrecy: with m=3 and two shares, all 31 values of a_0 stay
///    possible, each with exactly one polynomial.
///  * gf31-exhaustive-unwrap: of all 31 candidate shares behind a captured
///    pair, exactly one unwraps the delivered group key.
OracleReport run_oracle_selftest(std::uint64_t seed = 1, std::size_t instances = 1000);

}  // namespace swarmauth::sim
