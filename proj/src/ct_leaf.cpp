#include "ctscan/ct_leaf.hpp"

#include "ctscan/error.hpp"

namespace ctscan::ct {

namespace {

// Big-endian cursor over TLS-style presentation language fields.
class Cursor {
 public:
  explicit Cursor(ByteView data) : data_(data) {}

  std::uint64_t read_uint(int n_bytes) {
    if (pos_ + static_cast<std::size_t>(n_bytes) > data_.size()) {
      throw ParseError("leaf: truncated fixed-width field");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < n_bytes; ++i) v = (v << 8) | data_[pos_++];
    return v;
  }

  ByteView read_bytes(std::size_t n) {
    if (pos_ + n > data_.size()) {
      throw ParseError("leaf: truncated byte field");
    }
    const ByteView out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  // opaque<...> with an n-byte length prefix.
  ByteView read_vector(int length_bytes) {
    const std::uint64_t len = read_uint(length_bytes);
    return read_bytes(static_cast<std::size_t>(len));
  }

  bool done() const { return pos_ == data_.size(); }

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

constexpr std::size_t kEntryTypeOffset = 1 + 1 + 8;  // version, leaf_type, timestamp

}  // namespace

std::optional<EntryKind> peek_entry_kind(ByteView leaf_input) {
  if (leaf_input.size() < kEntryTypeOffset + 2) return std::nullopt;
  const std::uint16_t entry_type =
      static_cast<std::uint16_t>(leaf_input[kEntryTypeOffset] << 8) |
      leaf_input[kEntryTypeOffset + 1];
  switch (entry_type) {
    case 0:
      return EntryKind::kX509;
    case 1:
      return EntryKind::kPrecert;
    default:
      return std::nullopt;
  }
}

TimestampedCertificate decode_leaf(const RawLogEntry& entry) {
  Cursor cur(entry.leaf_input);

  const std::uint64_t version = cur.read_uint(1);
  if (version != 0) {
    throw ParseError("leaf: unknown version " + std::to_string(version));
  }
  const std::uint64_t leaf_type = cur.read_uint(1);
  if (leaf_type != 0) {
    throw ParseError("leaf: unknown leaf_type " + std::to_string(leaf_type));
  }

  TimestampedCertificate out;
  out.log_index = entry.index;
  out.timestamp = cur.read_uint(8);

  const std::uint64_t entry_type = cur.read_uint(2);
  ByteView der;
  if (entry_type == 0) {
    out.entry_kind = EntryKind::kX509;
    der = cur.read_vector(3);  // ASN.1Cert
  } else if (entry_type == 1) {
    out.entry_kind = EntryKind::kPrecert;
    cur.read_bytes(32);        // issuer_key_hash
    der = cur.read_vector(3);  // TBSCertificate
  } else {
    throw ParseError("leaf: unknown entry_type " + std::to_string(entry_type));
  }
  if (der.empty()) {
    throw ParseError("leaf: empty certificate payload");
  }

  cur.read_vector(2);  // CtExtensions
  if (!cur.done()) {
    throw ParseError("leaf: trailing bytes after TimestampedEntry");
  }

  out.der_bytes.assign(der.begin(), der.end());
  return out;
}

}  // namespace ctscan::ct
