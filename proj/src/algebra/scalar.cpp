#include "swarmauth/algebra/scalar.hpp"

#include "swarmauth/error.hpp"
#include "swarmauth/rng.hpp"

namespace swarmauth::algebra {

mpz_class mod_reduce(const mpz_class& value, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), value.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::size_t encoded_width(const mpz_class& modulus) {
  const std::size_t bytes = (mpz_sizeinbase(modulus.get_mpz_t(), 2) + 7) / 8;
  return bytes < 32 ? 32 : bytes;
}

Bytes encode_be(const mpz_class& value, std::size_t width) {
  Bytes out(width, 0);
  std::size_t count = 0;
  if (value != 0) {
    if ((mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8 > width) {
      throw InvalidArgument("encode_be: value does not fit");
    }
    Bytes tmp((mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8);
    mpz_export(tmp.data(), &count, 1, 1, 1, 0, value.get_mpz_t());
    std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(count),
              out.end() - static_cast<std::ptrdiff_t>(count));
  }
  return out;
}

mpz_class decode_be(std::span<const std::uint8_t> bytes) {
  mpz_class v;
  if (!bytes.empty()) mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return v;
}

Scalar::Scalar(const mpz_class& value, const mpz_class& modulus)
    : value_(mod_reduce(value, modulus)), modulus_(modulus) {
  if (modulus < 2) throw InvalidArgument("Scalar: modulus must be >= 2");
}

Scalar::Scalar(std::int64_t value, const mpz_class& modulus)
    : Scalar(mpz_class(static_cast<long>(value)), modulus) {}

Scalar Scalar::random(const mpz_class& modulus, Rng& rng) {
  return Scalar(rng.uniform_below(modulus), modulus);
}

Scalar Scalar::from_decimal(const std::string& text, const mpz_class& modulus) {
  mpz_class v;
  if (text.empty() || v.set_str(text, 10) != 0) {
    throw DecodeError("not a decimal integer: '" + text + "'");
  }
  if (v < 0 || v >= modulus) throw DecodeError("scalar out of range: " + text);
  return Scalar(v, modulus);
}

Scalar Scalar::from_bytes(std::span<const std::uint8_t> bytes,
                          const mpz_class& modulus) {
  mpz_class v = decode_be(bytes);
  if (v >= modulus) throw DecodeError("scalar encoding out of range");
  return Scalar(v, modulus);
}

namespace {

void require_same_field(const Scalar& a, const Scalar& b) {
  if (a.modulus() != b.modulus()) throw GroupMismatch("scalars from different fields");
}

}  // namespace

Scalar Scalar::operator+(const Scalar& rhs) const {
  require_same_field(*this, rhs);
  mpz_class r = value_ + rhs.value_;
  if (r >= modulus_) r -= modulus_;
  return Scalar(r, modulus_);
}

Scalar Scalar::operator-(const Scalar& rhs) const {
  require_same_field(*this, rhs);
  mpz_class r = value_ - rhs.value_;
  if (r < 0) r += modulus_;
  return Scalar(r, modulus_);
}

Scalar Scalar::operator*(const Scalar& rhs) const {
  require_same_field(*this, rhs);
  return Scalar(mpz_class(value_ * rhs.value_), modulus_);
}

Scalar Scalar::operator-() const {
  return Scalar(value_ == 0 ? mpz_class(0) : mpz_class(modulus_ - value_), modulus_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw InvalidArgument("inverse of zero");
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), value_.get_mpz_t(), modulus_.get_mpz_t()) == 0) {
    // Only reachable with a composite modulus.
    throw InvalidArgument("scalar has no inverse");
  }
  return Scalar(r, modulus_);
}

bool Scalar::operator==(const Scalar& rhs) const {
  return modulus_ == rhs.modulus_ && value_ == rhs.value_;
}

std::size_t Scalar::byte_width() const { return encoded_width(modulus_); }

Bytes Scalar::to_bytes() const { return encode_be(value_, byte_width()); }

Scalar scalar_add(const Scalar& a, const Scalar& b) { return a + b; }
Scalar scalar_mul(const Scalar& a, const Scalar& b) { return a * b; }
Scalar scalar_inv(const Scalar& a) { return a.inverse(); }

}  // namespace swarmauth::algebra
