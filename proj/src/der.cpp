#include "ctscan/der.hpp"

#include "ctscan/error.hpp"

namespace ctscan::der {

std::uint8_t Reader::peek_tag() const {
  if (done()) throw ParseError("DER: read past end of input");
  return data_[pos_];
}

Tlv Reader::read() {
  const std::size_t start = pos_;
  if (pos_ >= data_.size()) throw ParseError("DER: read past end of input");
  const std::uint8_t tag = data_[pos_++];
  if ((tag & 0x1f) == 0x1f) {
    throw ParseError("DER: high tag numbers are not supported");
  }
  if (pos_ >= data_.size()) throw ParseError("DER: truncated length");
  std::uint64_t length = data_[pos_++];
  if (length & 0x80) {
    const std::size_t n_octets = length & 0x7f;
    if (n_octets == 0) throw ParseError("DER: indefinite length not allowed");
    if (n_octets > 8) throw ParseError("DER: length too large");
    if (pos_ + n_octets > data_.size()) throw ParseError("DER: truncated length");
    length = 0;
    for (std::size_t i = 0; i < n_octets; ++i) {
      length = (length << 8) | data_[pos_++];
    }
  }
  if (length > data_.size() - pos_) {
    throw ParseError("DER: value extends past end of input");
  }
  Tlv tlv;
  tlv.tag = tag;
  tlv.content = data_.subspan(pos_, static_cast<std::size_t>(length));
  pos_ += static_cast<std::size_t>(length);
  tlv.raw = data_.subspan(start, pos_ - start);
  return tlv;
}

Tlv Reader::expect(std::uint8_t tag, const char* what) {
  const Tlv tlv = read();
  if (tlv.tag != tag) {
    throw ParseError(std::string("DER: expected ") + what + ", got tag 0x" +
                     to_hex({&tlv.tag, 1}));
  }
  return tlv;
}

void Reader::expect_done(const char* what) const {
  if (!done()) {
    throw ParseError(std::string("DER: trailing bytes after ") + what);
  }
}

std::string decode_oid(ByteView content) {
  if (content.empty()) throw ParseError("DER: empty OID");
  std::string out;
  std::uint64_t arc = 0;
  int arc_bytes = 0;
  bool first = true;
  for (std::size_t i = 0; i < content.size(); ++i) {
    const std::uint8_t b = content[i];
    if (++arc_bytes > 9) throw ParseError("DER: OID arc overflows 64 bits");
    arc = (arc << 7) | (b & 0x7f);
    if (b & 0x80) {
      if (i + 1 == content.size()) throw ParseError("DER: truncated OID arc");
      continue;
    }
    if (first) {
      // First subidentifier packs the first two arcs.
      const std::uint64_t a = arc < 80 ? arc / 40 : 2;
      const std::uint64_t b2 = arc < 80 ? arc % 40 : arc - 80;
      out = std::to_string(a) + "." + std::to_string(b2);
      first = false;
    } else {
      out += "." + std::to_string(arc);
    }
    arc = 0;
    arc_bytes = 0;
  }
  return out;
}

bool decode_boolean(ByteView content) {
  if (content.size() != 1) throw ParseError("DER: BOOLEAN must be one byte");
  return content[0] != 0;
}

int uint_bit_length(ByteView integer_content) {
  std::size_t i = 0;
  while (i < integer_content.size() && integer_content[i] == 0) ++i;
  if (i == integer_content.size()) return 0;
  int top_bits = 0;
  for (std::uint8_t b = integer_content[i]; b != 0; b >>= 1) ++top_bits;
  return static_cast<int>(integer_content.size() - i - 1) * 8 + top_bits;
}

}  // namespace ctscan::der
