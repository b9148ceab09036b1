#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctscan/bytes.hpp"

namespace ctscan::x509 {

// One AttributeTypeAndValue, in encoded order. The type is kept as a
// dotted-decimal OID string; the value is UTF-8.
struct DnAttribute {
  std::string oid;
  std::string value;
};

struct DistinguishedName {
  std::vector<DnAttribute> attributes;  // may be empty
};

enum class KeyKind { kRsa, kEcdsa };

struct PublicKeyInfo {
  KeyKind kind = KeyKind::kRsa;
  int bits = 0;  // RSA modulus bit length, or EC field size
};

enum class SanKind { kDns, kIp, kEmail, kUri, kOther };

struct SanEntry {
  SanKind kind = SanKind::kOther;
  std::string value;
};

struct ExtensionRecord {
  std::string oid;
  bool critical = false;
  std::size_t value_length = 0;  // extnValue OCTET STRING content bytes
};

struct ParsedCertificate {
  DistinguishedName subject;
  std::string issuer_string;  // canonical rendering of the issuer DN
  std::optional<std::string> common_name;
  PublicKeyInfo key;
  std::int64_t not_before = 0;  // UTC seconds
  std::int64_t not_after = 0;
  std::vector<SanEntry> san;
  std::vector<ExtensionRecord> extensions;
  std::vector<std::string> policy_oids;
};

inline constexpr const char* kOidSubjectAltName = "2.5.29.17";
inline constexpr const char* kOidCertificatePolicies = "2.5.29.32";
inline constexpr const char* kOidPrecertPoison = "1.3.6.1.4.1.11129.2.4.3";

// Parses a DER Certificate or a bare TBSCertificate; the two are told apart
// by the outer structure (a Certificate is a SEQUENCE of three elements whose
// first element is itself the TBS SEQUENCE). The precertificate poison
// extension is dropped from the extension list so precertificates and their
// final certificates yield identical features. Throws ParseError on
// malformed ASN.1, unsupported key algorithms, bad validity times, or
// not_after < not_before.
ParsedCertificate parse_certificate(ByteView der);

// "TYPE=value" pairs joined by ", " in encoded order. Known attribute types
// use short names (CN, O, OU, ST, L, C, emailAddress); everything else is
// dotted decimal. Empty DN renders as "".
std::string dn_to_string(const DistinguishedName& dn);

// CA/Browser Forum policy classification: 3 = EV, 2 = OV, 1 = DV,
// 0 = no recognized policy. Strictest wins when several are present.
int classify_validation(const std::vector<std::string>& policy_oids);

// SubjectPublicKeyInfo -> key kind and bit length. Only RSA and the P-256 /
// P-384 / P-521 curves are accepted.
PublicKeyInfo parse_public_key_info(ByteView spki_der);

// Bit length of an RSA modulus from INTEGER content octets; leading 0x00
// sign padding does not change the result.
int rsa_modulus_bit_length(ByteView modulus_content);

}  // namespace ctscan::x509
