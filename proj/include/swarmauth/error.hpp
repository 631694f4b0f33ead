#pragma once

#include <stdexcept>
#include <string>

namespace swarmauth {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller (zero index, duplicate indices,
/// wrong contribution count, inverse of zero, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operands belong to different groups or fields.
class GroupMismatch : public Error {
 public:
  using Error::Error;
};

/// Byte string does not decode to a valid value (off-curve point,
/// out-of-range scalar, truncated frame).
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Authenticated decryption rejected the input.
class UnwrapError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent configuration file / CLI input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace swarmauth
