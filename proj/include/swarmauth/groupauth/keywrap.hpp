#pragma once

#include <memory>
#include <optional>

#include "swarmauth/bytes.hpp"
#include "swarmauth/groupauth/scheme.hpp"

namespace swarmauth::groupauth {

/// Authenticated encryption with a 256-bit key and a 96-bit nonce.
class AeadCipher {
 public:
  virtual ~AeadCipher() = default;

  virtual const char* name() const = 0;
  virtual std::size_t tag_size() const = 0;

  struct Sealed {
    Bytes ciphertext;
    Bytes tag;
  };

  virtual Sealed seal(const SymmetricKey& key, std::span<const std::uint8_t> nonce,
                      std::span<const std::uint8_t> plaintext,
                      std::span<const std::uint8_t> aad) const = 0;

  /// std::nullopt when the tag does not verify.
  virtual std::optional<Bytes> open(const SymmetricKey& key,
                                    std::span<const std::uint8_t> nonce,
                                    std::span<const std::uint8_t> ciphertext,
                                    std::span<const std::uint8_t> tag,
                                    std::span<const std::uint8_t> aad) const = 0;
};

/// AES-256-GCM backed by OpenSSL EVP.
class Aes256Gcm final : public AeadCipher {
 public:
  const char* name() const override { return "AES-256-GCM"; }
  std::size_t tag_size() const override { return 16; }
  Sealed seal(const SymmetricKey& key, std::span<const std::uint8_t> nonce,
              std::span<const std::uint8_t> plaintext,
              std::span<const std::uint8_t> aad) const override;
  std::optional<Bytes> open(const SymmetricKey& key, std::span<const std::uint8_t> nonce,
                            std::span<const std::uint8_t> ciphertext,
                            std::span<const std::uint8_t> tag,
                            std::span<const std::uint8_t> aad) const override;
};

const AeadCipher& default_cipher();

inline constexpr std::size_t kNonceSize = 12;

struct WrappedGroupKey {
  Bytes nonce;
  Bytes ciphertext;
  Bytes tag;

  bool operator==(const WrappedGroupKey&) const = default;
};

/// Encrypts the group key (fixed-width big-endian scalar) under `key` with a
/// fresh nonce drawn from `rng`.
WrappedGroupKey wrap_group_key(const SymmetricKey& key, const Scalar& group_key, Rng& rng,
                               const AeadCipher& cipher = default_cipher());

/// Throws UnwrapError when authentication fails or the plaintext is not a
/// valid scalar mod `order`.
Scalar unwrap_group_key(const SymmetricKey& key, const WrappedGroupKey& wrapped,
                        const mpz_class& order, const AeadCipher& cipher = default_cipher());

/// Non-throwing variant for adversary key searches.
std::optional<Scalar> try_unwrap_group_key(const SymmetricKey& key, const WrappedGroupKey& wrapped,
                                           const mpz_class& order,
                                           const AeadCipher& cipher = default_cipher());

}  // namespace swarmauth::groupauth
