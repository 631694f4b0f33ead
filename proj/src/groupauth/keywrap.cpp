#include "swarmauth/groupauth/keywrap.hpp"

#include <openssl/evp.h>

#include <memory>
#include <string_view>

#include "swarmauth/error.hpp"

namespace swarmauth::groupauth {

namespace {

constexpr std::string_view kWrapAad = "swarmauth/group-key/v1";

struct CtxDeleter {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter>;

CipherCtx new_ctx() {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw Error("EVP_CIPHER_CTX_new failed");
  return ctx;
}

std::span<const std::uint8_t> aad_bytes() {
  return {reinterpret_cast<const std::uint8_t*>(kWrapAad.data()), kWrapAad.size()};
}

}  // namespace

AeadCipher::Sealed Aes256Gcm::seal(const SymmetricKey& key, std::span<const std::uint8_t> nonce,
                                   std::span<const std::uint8_t> plaintext,
                                   std::span<const std::uint8_t> aad) const {
  if (nonce.size() != kNonceSize) throw InvalidArgument("AES-GCM nonce must be 12 bytes");
  CipherCtx ctx = new_ctx();
  Sealed out{Bytes(plaintext.size()), Bytes(tag_size())};
  int len = 0;
  bool ok = EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr) == 1 &&
            EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(nonce.size()),
                                nullptr) == 1 &&
            EVP_EncryptInit_ex(ctx.get(), nullptr, nullptr, key.data(), nonce.data()) == 1;
  if (ok && !aad.empty()) {
    ok = EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) == 1;
  }
  if (ok && !plaintext.empty()) {
    ok = EVP_EncryptUpdate(ctx.get(), out.ciphertext.data(), &len, plaintext.data(),
                           static_cast<int>(plaintext.size())) == 1;
  }
  ok = ok && EVP_EncryptFinal_ex(ctx.get(), out.ciphertext.data() + len, &len) == 1 &&
       EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, static_cast<int>(tag_size()),
                           out.tag.data()) == 1;
  if (!ok) throw Error("AES-256-GCM encryption failed");
  return out;
}

std::optional<Bytes> Aes256Gcm::open(const SymmetricKey& key, std::span<const std::uint8_t> nonce,
                                     std::span<const std::uint8_t> ciphertext,
                                     std::span<const std::uint8_t> tag,
                                     std::span<const std::uint8_t> aad) const {
  if (nonce.size() != kNonceSize || tag.size() != tag_size()) return std::nullopt;
  CipherCtx ctx = new_ctx();
  Bytes plain(ciphertext.size());
  Bytes tag_copy(tag.begin(), tag.end());
  int len = 0;
  bool ok = EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr) == 1 &&
            EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(nonce.size()),
                                nullptr) == 1 &&
            EVP_DecryptInit_ex(ctx.get(), nullptr, nullptr, key.data(), nonce.data()) == 1;
  if (ok && !aad.empty()) {
    ok = EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) == 1;
  }
  if (ok && !ciphertext.empty()) {
    ok = EVP_DecryptUpdate(ctx.get(), plain.data(), &len, ciphertext.data(),
                           static_cast<int>(ciphertext.size())) == 1;
  }
  ok = ok && EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, static_cast<int>(tag_copy.size()),
                                 tag_copy.data()) == 1;
  if (!ok) return std::nullopt;
  int final_len = 0;
  if (EVP_DecryptFinal_ex(ctx.get(), plain.data() + len, &final_len) != 1) return std::nullopt;
  return plain;
}

const AeadCipher& default_cipher() {
  static const Aes256Gcm cipher;
  return cipher;
}

WrappedGroupKey wrap_group_key(const SymmetricKey& key, const Scalar& group_key, Rng& rng,
                               const AeadCipher& cipher) {
  WrappedGroupKey out;
  out.nonce = rng.bytes(kNonceSize);
  const Bytes plain = group_key.to_bytes();
  auto sealed = cipher.seal(key, out.nonce, plain, aad_bytes());
  out.ciphertext = std::move(sealed.ciphertext);
  out.tag = std::move(sealed.tag);
  return out;
}

std::optional<Scalar> try_unwrap_group_key(const SymmetricKey& key, const WrappedGroupKey& wrapped,
                                           const mpz_class& order, const AeadCipher& cipher) {
  auto plain = cipher.open(key, wrapped.nonce, wrapped.ciphertext, wrapped.tag, aad_bytes());
  if (!plain) return std::nullopt;
  const mpz_class v = algebra::decode_be(*plain);
  if (v >= order) return std::nullopt;
  return Scalar(v, order);
}

Scalar unwrap_group_key(const SymmetricKey& key, const WrappedGroupKey& wrapped,
                        const mpz_class& order, const AeadCipher& cipher) {
  auto r = try_unwrap_group_key(key, wrapped, order, cipher);
  if (!r) throw UnwrapError("group key authentication failed");
  return *r;
}

}  // namespace swarmauth::groupauth
