#pragma once

#include <cstdint>
#include <string>

#include "ctscan/bytes.hpp"

// Minimal DER (X.690) reader: definite-length TLV over a borrowed byte view.
// Only low-tag-number identifiers are supported, which covers everything an
// X.509 certificate encodes.

namespace ctscan::der {

// Universal tag numbers used by the X.509 parser.
inline constexpr std::uint8_t kTagBoolean = 0x01;
inline constexpr std::uint8_t kTagInteger = 0x02;
inline constexpr std::uint8_t kTagBitString = 0x03;
inline constexpr std::uint8_t kTagOctetString = 0x04;
inline constexpr std::uint8_t kTagOid = 0x06;
inline constexpr std::uint8_t kTagUtf8String = 0x0c;
inline constexpr std::uint8_t kTagNumericString = 0x12;
inline constexpr std::uint8_t kTagPrintableString = 0x13;
inline constexpr std::uint8_t kTagT61String = 0x14;
inline constexpr std::uint8_t kTagIa5String = 0x16;
inline constexpr std::uint8_t kTagUtcTime = 0x17;
inline constexpr std::uint8_t kTagGeneralizedTime = 0x18;
inline constexpr std::uint8_t kTagVisibleString = 0x1a;
inline constexpr std::uint8_t kTagUniversalString = 0x1c;
inline constexpr std::uint8_t kTagBmpString = 0x1e;
inline constexpr std::uint8_t kTagSequence = 0x30;  // constructed
inline constexpr std::uint8_t kTagSet = 0x31;       // constructed

inline constexpr std::uint8_t kConstructed = 0x20;
inline constexpr std::uint8_t kClassContext = 0x80;

// Context-specific constructed [n], as used for EXPLICIT tagging.
constexpr std::uint8_t context_constructed(std::uint8_t n) {
  return static_cast<std::uint8_t>(kClassContext | kConstructed | n);
}
// Context-specific primitive [n], as used for IMPLICIT tagging.
constexpr std::uint8_t context_primitive(std::uint8_t n) {
  return static_cast<std::uint8_t>(kClassContext | n);
}

struct Tlv {
  std::uint8_t tag = 0;  // full identifier octet
  ByteView content;      // value bytes
  ByteView raw;          // identifier + length + value

  bool is_context(std::uint8_t n) const {
    return (tag & 0xc0) == kClassContext && (tag & 0x1f) == n;
  }
};

// Sequential TLV reader. All read paths throw ParseError on truncated or
// malformed input; nothing here dereferences past the view.
class Reader {
 public:
  explicit Reader(ByteView data) : data_(data) {}

  bool done() const { return pos_ >= data_.size(); }
  std::size_t remaining() const { return data_.size() - pos_; }

  // Identifier octet of the next TLV without consuming it.
  std::uint8_t peek_tag() const;

  Tlv read();
  Tlv expect(std::uint8_t tag, const char* what);

  // Requires that every byte has been consumed.
  void expect_done(const char* what) const;

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

// Content-octet decoders.
std::string decode_oid(ByteView content);  // dotted-decimal form
bool decode_boolean(ByteView content);

// Bit length of an unsigned big-endian integer given INTEGER content octets
// (leading 0x00 sign padding ignored).
int uint_bit_length(ByteView integer_content);

}  // namespace ctscan::der
