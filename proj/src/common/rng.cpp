#include "swarmauth/rng.hpp"

#include "swarmauth/error.hpp"

namespace swarmauth {

mpz_class Rng::uniform_below(const mpz_class& bound) {
  if (bound <= 0) throw InvalidArgument("uniform_below: bound must be positive");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const std::size_t top_bits = bits - (words - 1) * 64;
  while (true) {
    mpz_class candidate = 0;
    for (std::size_t i = 0; i < words; ++i) {
      std::uint64_t w = engine_();
      if (i == 0 && top_bits < 64) w &= (std::uint64_t{1} << top_bits) - 1;
      candidate <<= 64;
      // mpz_class has no uint64 constructor on every platform; go via halves.
      candidate += mpz_class(static_cast<unsigned long>(w >> 32)) << 32;
      candidate += static_cast<unsigned long>(w & 0xffffffffu);
    }
    if (candidate < bound) return candidate;
  }
}

std::uint64_t Rng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw InvalidArgument("uniform_int: empty range");
  // Output must not depend on the standard library; no std distributions.
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return engine_();
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
  std::uint64_t w;
  do {
    w = engine_();
  } while (w >= limit);
  return lo + w % span;
}

Bytes Rng::bytes(std::size_t n) {
  Bytes out(n);
  std::size_t i = 0;
  while (i < n) {
    std::uint64_t w = engine_();
    for (int k = 0; k < 8 && i < n; ++k, ++i) {
      out[i] = static_cast<std::uint8_t>(w & 0xff);
      w >>= 8;
    }
  }
  return out;
}

}  // namespace swarmauth
