#pragma once

#include <cstdint>
#include <random>

#include <gmpxx.h>

#include "swarmauth/bytes.hpp"

namespace swarmauth {

/// Seeded, reproducible randomness for polynomial coefficients, nonces and
/// test generators. Not a CSPRNG; simulation output must be replayable
/// from the seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, bound) by rejection sampling. bound must be positive.
  mpz_class uniform_below(const mpz_class& bound);

  /// Uniform in [lo, hi] inclusive.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

  Bytes bytes(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace swarmauth
