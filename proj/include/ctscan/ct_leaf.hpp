#pragma once

#include <cstdint>
#include <optional>

#include "ctscan/bytes.hpp"

namespace ctscan::ct {

enum class EntryKind { kX509, kPrecert };

struct RawLogEntry {
  std::uint64_t index = 0;
  Bytes leaf_input;
  Bytes extra_data;
  // Derived from the leaf's entry_type field; nullopt when the leaf is too
  // short or carries an unknown type.
  std::optional<EntryKind> entry_kind;
};

struct TimestampedCertificate {
  std::uint64_t timestamp = 0;  // milliseconds since epoch
  Bytes der_bytes;              // ASN.1Cert, or the PreCert TBSCertificate
  EntryKind entry_kind = EntryKind::kX509;
  std::uint64_t log_index = 0;
};

// Entry kind from the 2-byte entry_type at its fixed offset in a
// MerkleTreeLeaf, without decoding the rest.
std::optional<EntryKind> peek_entry_kind(ByteView leaf_input);

// Decodes an RFC 6962 MerkleTreeLeaf (v1, timestamped_entry). For x509
// entries der_bytes is the ASN.1Cert payload; for precert entries it is the
// TBSCertificate from the PreCert structure, with the 32-byte
// issuer_key_hash skipped. Strict: unknown version/leaf_type/entry_type,
// truncated length-prefixed fields, and trailing bytes all throw ParseError.
TimestampedCertificate decode_leaf(const RawLogEntry& entry);

}  // namespace ctscan::ct
