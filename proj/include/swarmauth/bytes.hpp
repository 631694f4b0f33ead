#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swarmauth {

using Bytes = std::vector<std::uint8_t>;

std::string to_hex(std::span<const std::uint8_t> bytes);

/// Throws DecodeError on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

}  // namespace swarmauth
