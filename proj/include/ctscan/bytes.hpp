#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctscan {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline ByteView as_bytes(const std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

std::string to_hex(ByteView data);

// Standard base64 (RFC 4648) with padding. decode() is strict: it rejects
// characters outside the alphabet, bad padding and non-multiple-of-4 input.
std::string base64_encode(ByteView data);
Bytes base64_decode(std::string_view text);

// Number of Unicode scalar values in a UTF-8 string. DN and SAN lengths are
// counted in scalars, not bytes.
std::size_t utf8_length(std::string_view text);

}  // namespace ctscan
