#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "swarmauth/bytes.hpp"

namespace swarmauth {
class Rng;
}

namespace swarmauth::algebra {

/// Element of the prime field Z_q. Carries its modulus so that operands from
/// different fields are caught instead of silently mixed. The value is
/// always kept in [0, q).
class Scalar {
 public:
  /// Reduces `value` into [0, modulus). modulus must be >= 2.
  Scalar(const mpz_class& value, const mpz_class& modulus);
  Scalar(std::int64_t value, const mpz_class& modulus);

  static Scalar zero(const mpz_class& modulus) { return Scalar(0, modulus); }
  static Scalar one(const mpz_class& modulus) { return Scalar(1, modulus); }
  static Scalar random(const mpz_class& modulus, Rng& rng);
  static Scalar from_decimal(const std::string& text, const mpz_class& modulus);

  /// Big-endian, fixed width. Throws DecodeError if the value is >= modulus.
  static Scalar from_bytes(std::span<const std::uint8_t> bytes,
                           const mpz_class& modulus);

  const mpz_class& value() const { return value_; }
  const mpz_class& modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  Scalar operator+(const Scalar& rhs) const;
  Scalar operator-(const Scalar& rhs) const;
  Scalar operator*(const Scalar& rhs) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs) { return *this = *this + rhs; }
  Scalar& operator*=(const Scalar& rhs) { return *this = *this * rhs; }

  /// Throws InvalidArgument for zero.
  Scalar inverse() const;

  bool operator==(const Scalar& rhs) const;

  std::string to_decimal() const { return value_.get_str(10); }

  /// Big-endian, padded to the byte width of the modulus (32 for 256-bit q).
  Bytes to_bytes() const;
  std::size_t byte_width() const;

 private:
  mpz_class value_;
  mpz_class modulus_;
};

Scalar scalar_add(const Scalar& a, const Scalar& b);
Scalar scalar_mul(const Scalar& a, const Scalar& b);
Scalar scalar_inv(const Scalar& a);

/// Reduces the (possibly negative) integer into [0, m).
mpz_class mod_reduce(const mpz_class& value, const mpz_class& m);

/// Width in bytes of the canonical encoding of values below `modulus`.
std::size_t encoded_width(const mpz_class& modulus);

/// Big-endian fixed-width encoding; value must fit.
Bytes encode_be(const mpz_class& value, std::size_t width);
mpz_class decode_be(std::span<const std::uint8_t> bytes);

}  // namespace swarmauth::algebra
