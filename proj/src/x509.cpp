#include "ctscan/x509.hpp"

#include <array>
#include <cstdio>
#include <utility>

#include "ctscan/der.hpp"
#include "ctscan/error.hpp"
#include "ctscan/timeconv.hpp"

namespace ctscan::x509 {

namespace {

constexpr const char* kOidCommonName = "2.5.4.3";

constexpr std::pair<const char*, const char*> kDnShortNames[] = {
    {"2.5.4.3", "CN"},
    {"2.5.4.10", "O"},
    {"2.5.4.11", "OU"},
    {"2.5.4.8", "ST"},
    {"2.5.4.7", "L"},
    {"2.5.4.6", "C"},
    {"1.2.840.113549.1.9.1", "emailAddress"},
};

constexpr const char* kOidRsaEncryption = "1.2.840.113549.1.1.1";
constexpr const char* kOidEcPublicKey = "1.2.840.10045.2.1";
constexpr const char* kOidCurveP256 = "1.2.840.10045.3.1.7";
constexpr const char* kOidCurveP384 = "1.3.132.0.34";
constexpr const char* kOidCurveP521 = "1.3.132.0.35";

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

// Directory string -> UTF-8. ASCII-family strings are copied, T61 is mapped
// as Latin-1, BMP and Universal strings are big-endian UTF-16/32.
std::string decode_string(const der::Tlv& tlv) {
  const ByteView c = tlv.content;
  switch (tlv.tag) {
    case der::kTagUtf8String:
    case der::kTagPrintableString:
    case der::kTagIa5String:
    case der::kTagNumericString:
    case der::kTagVisibleString:
      return std::string(reinterpret_cast<const char*>(c.data()), c.size());
    case der::kTagT61String: {
      std::string out;
      for (const std::uint8_t b : c) append_utf8(out, b);
      return out;
    }
    case der::kTagBmpString: {
      if (c.size() % 2 != 0) throw ParseError("BMPString with odd length");
      std::string out;
      for (std::size_t i = 0; i < c.size(); i += 2) {
        append_utf8(out, (static_cast<std::uint32_t>(c[i]) << 8) | c[i + 1]);
      }
      return out;
    }
    case der::kTagUniversalString: {
      if (c.size() % 4 != 0) throw ParseError("UniversalString with bad length");
      std::string out;
      for (std::size_t i = 0; i < c.size(); i += 4) {
        append_utf8(out, (static_cast<std::uint32_t>(c[i]) << 24) |
                             (static_cast<std::uint32_t>(c[i + 1]) << 16) |
                             (static_cast<std::uint32_t>(c[i + 2]) << 8) |
                             c[i + 3]);
      }
      return out;
    }
    default:
      // Unprintable value types render as #hex, RFC 4514 style.
      return "#" + to_hex(c);
  }
}

DistinguishedName parse_name(const der::Tlv& name) {
  DistinguishedName dn;
  der::Reader rdns(name.content);
  while (!rdns.done()) {
    const der::Tlv rdn = rdns.expect(der::kTagSet, "RelativeDistinguishedName");
    der::Reader atvs(rdn.content);
    if (atvs.done()) throw ParseError("empty RelativeDistinguishedName");
    while (!atvs.done()) {
      const der::Tlv atv = atvs.expect(der::kTagSequence, "AttributeTypeAndValue");
      der::Reader fields(atv.content);
      const der::Tlv type = fields.expect(der::kTagOid, "attribute type");
      const der::Tlv value = fields.read();
      fields.expect_done("AttributeTypeAndValue");
      dn.attributes.push_back({der::decode_oid(type.content), decode_string(value)});
    }
  }
  return dn;
}

std::int64_t parse_time(const der::Tlv& tlv) {
  const std::string_view text(reinterpret_cast<const char*>(tlv.content.data()),
                              tlv.content.size());
  if (tlv.tag == der::kTagUtcTime) return parse_utc_time(text);
  if (tlv.tag == der::kTagGeneralizedTime) return parse_generalized_time(text);
  throw ParseError("unparseable validity time (not UTCTime or GeneralizedTime)");
}

std::string ipv4_to_string(ByteView b) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", b[0], b[1], b[2], b[3]);
  return buf;
}

std::string ipv6_to_string(ByteView b) {
  char buf[48];
  std::snprintf(buf, sizeof(buf),
                "%02x%02x:%02x%02x:%02x%02x:%02x%02x:"
                "%02x%02x:%02x%02x:%02x%02x:%02x%02x",
                b[0], b[1], b[2], b[3], b[4], b[5], b[6], b[7], b[8], b[9],
                b[10], b[11], b[12], b[13], b[14], b[15]);
  return buf;
}

std::vector<SanEntry> parse_san(ByteView extn_value) {
  std::vector<SanEntry> out;
  der::Reader outer(extn_value);
  const der::Tlv names = outer.expect(der::kTagSequence, "GeneralNames");
  outer.expect_done("GeneralNames");
  der::Reader items(names.content);
  while (!items.done()) {
    const der::Tlv name = items.read();
    if ((name.tag & 0xc0) != der::kClassContext) {
      throw ParseError("GeneralName without context tag");
    }
    SanEntry entry;
    const std::string text(reinterpret_cast<const char*>(name.content.data()),
                           name.content.size());
    switch (name.tag & 0x1f) {
      case 2:  // dNSName
        if (name.content.empty()) throw ParseError("empty dNSName in SAN");
        entry = {SanKind::kDns, text};
        break;
      case 1:  // rfc822Name
        entry = {SanKind::kEmail, text};
        break;
      case 6:  // uniformResourceIdentifier
        entry = {SanKind::kUri, text};
        break;
      case 7:  // iPAddress
        if (name.content.size() == 4) {
          entry = {SanKind::kIp, ipv4_to_string(name.content)};
        } else if (name.content.size() == 16) {
          entry = {SanKind::kIp, ipv6_to_string(name.content)};
        } else {
          throw ParseError("iPAddress in SAN is not 4 or 16 bytes");
        }
        break;
      default:
        entry = {SanKind::kOther, to_hex(name.content)};
        break;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<std::string> parse_policies(ByteView extn_value) {
  std::vector<std::string> out;
  der::Reader outer(extn_value);
  const der::Tlv list = outer.expect(der::kTagSequence, "certificatePolicies");
  outer.expect_done("certificatePolicies");
  der::Reader items(list.content);
  while (!items.done()) {
    const der::Tlv info = items.expect(der::kTagSequence, "PolicyInformation");
    der::Reader fields(info.content);
    const der::Tlv oid = fields.expect(der::kTagOid, "policyIdentifier");
    out.push_back(der::decode_oid(oid.content));
    // policyQualifiers, if any, are not interesting here.
  }
  return out;
}

void parse_extensions(ByteView extn_list, ParsedCertificate& cert) {
  der::Reader items(extn_list);
  while (!items.done()) {
    const der::Tlv ext = items.expect(der::kTagSequence, "Extension");
    der::Reader fields(ext.content);
    const der::Tlv oid_tlv = fields.expect(der::kTagOid, "extnID");
    const std::string oid = der::decode_oid(oid_tlv.content);
    bool critical = false;
    if (!fields.done() && fields.peek_tag() == der::kTagBoolean) {
      critical = der::decode_boolean(fields.read().content);
    }
    const der::Tlv value = fields.expect(der::kTagOctetString, "extnValue");
    fields.expect_done("Extension");
    if (oid == kOidPrecertPoison) continue;
    if (oid == kOidSubjectAltName) cert.san = parse_san(value.content);
    if (oid == kOidCertificatePolicies) {
      cert.policy_oids = parse_policies(value.content);
    }
    cert.extensions.push_back({oid, critical, value.content.size()});
  }
}

ParsedCertificate parse_tbs(const der::Tlv& tbs) {
  ParsedCertificate cert;
  der::Reader fields(tbs.content);

  if (!fields.done() && fields.peek_tag() == der::context_constructed(0)) {
    fields.read();  // version
  }
  fields.expect(der::kTagInteger, "serialNumber");
  fields.expect(der::kTagSequence, "signature algorithm");
  const der::Tlv issuer = fields.expect(der::kTagSequence, "issuer");
  cert.issuer_string = dn_to_string(parse_name(issuer));

  const der::Tlv validity = fields.expect(der::kTagSequence, "validity");
  {
    der::Reader times(validity.content);
    cert.not_before = parse_time(times.read());
    cert.not_after = parse_time(times.read());
    times.expect_done("validity");
    if (cert.not_after < cert.not_before) {
      throw ParseError("certificate validity ends before it begins");
    }
  }

  const der::Tlv subject = fields.expect(der::kTagSequence, "subject");
  cert.subject = parse_name(subject);
  for (const DnAttribute& attr : cert.subject.attributes) {
    if (attr.oid == kOidCommonName) {
      cert.common_name = attr.value;
      break;
    }
  }

  const der::Tlv spki = fields.expect(der::kTagSequence, "subjectPublicKeyInfo");
  cert.key = parse_public_key_info(spki.raw);

  while (!fields.done()) {
    const der::Tlv tail = fields.read();
    if (tail.is_context(3)) {
      der::Reader wrapper(tail.content);
      const der::Tlv list = wrapper.expect(der::kTagSequence, "Extensions");
      wrapper.expect_done("Extensions");
      parse_extensions(list.content, cert);
    }
    // [1]/[2] unique identifiers are skipped.
  }
  return cert;
}

}  // namespace

ParsedCertificate parse_certificate(ByteView der_bytes) {
  der::Reader top(der_bytes);
  const der::Tlv outer = top.expect(der::kTagSequence, "Certificate or TBSCertificate");
  top.expect_done("certificate");

  // A Certificate is SEQUENCE { tbs SEQUENCE, sigAlg SEQUENCE, sig BIT STRING }.
  // A TBSCertificate never starts with a universal SEQUENCE (its first element
  // is the [0] version tag or the serialNumber INTEGER).
  der::Reader inner(outer.content);
  if (!inner.done() && inner.peek_tag() == der::kTagSequence) {
    const der::Tlv tbs = inner.read();
    inner.expect(der::kTagSequence, "signatureAlgorithm");
    inner.expect(der::kTagBitString, "signatureValue");
    inner.expect_done("Certificate");
    return parse_tbs(tbs);
  }
  return parse_tbs(outer);
}

std::string dn_to_string(const DistinguishedName& dn) {
  std::string out;
  for (std::size_t i = 0; i < dn.attributes.size(); ++i) {
    if (i > 0) out += ", ";
    const std::string& oid = dn.attributes[i].oid;
    const char* name = oid.c_str();
    for (const auto& [known, short_name] : kDnShortNames) {
      if (oid == known) {
        name = short_name;
        break;
      }
    }
    out += name;
    out += "=";
    out += dn.attributes[i].value;
  }
  return out;
}

int classify_validation(const std::vector<std::string>& policy_oids) {
  int code = 0;
  for (const std::string& oid : policy_oids) {
    if (oid == "2.23.140.1.1" || oid.starts_with("2.23.140.1.1.")) {
      code = std::max(code, 3);
    } else if (oid == "2.23.140.1.2.2" || oid == "2.23.140.1.2.3") {
      code = std::max(code, 2);
    } else if (oid == "2.23.140.1.2.1") {
      code = std::max(code, 1);
    }
  }
  return code;
}

PublicKeyInfo parse_public_key_info(ByteView spki_der) {
  der::Reader top(spki_der);
  const der::Tlv spki = top.expect(der::kTagSequence, "SubjectPublicKeyInfo");
  der::Reader fields(spki.content);
  const der::Tlv alg = fields.expect(der::kTagSequence, "AlgorithmIdentifier");
  const der::Tlv key_bits = fields.expect(der::kTagBitString, "subjectPublicKey");
  fields.expect_done("SubjectPublicKeyInfo");

  der::Reader alg_fields(alg.content);
  const std::string alg_oid =
      der::decode_oid(alg_fields.expect(der::kTagOid, "algorithm").content);

  if (key_bits.content.empty() || key_bits.content[0] != 0) {
    throw ParseError("subjectPublicKey BIT STRING with unused bits");
  }
  const ByteView key_der = key_bits.content.subspan(1);

  if (alg_oid == kOidRsaEncryption) {
    der::Reader key_top(key_der);
    const der::Tlv rsa = key_top.expect(der::kTagSequence, "RSAPublicKey");
    der::Reader rsa_fields(rsa.content);
    const der::Tlv modulus = rsa_fields.expect(der::kTagInteger, "modulus");
    rsa_fields.expect(der::kTagInteger, "publicExponent");
    const int bits = rsa_modulus_bit_length(modulus.content);
    if (bits == 0) throw ParseError("RSA modulus is zero");
    return {KeyKind::kRsa, bits};
  }
  if (alg_oid == kOidEcPublicKey) {
    const der::Tlv params = alg_fields.expect(der::kTagOid, "namedCurve");
    const std::string curve = der::decode_oid(params.content);
    if (curve == kOidCurveP256) return {KeyKind::kEcdsa, 256};
    if (curve == kOidCurveP384) return {KeyKind::kEcdsa, 384};
    if (curve == kOidCurveP521) return {KeyKind::kEcdsa, 521};
    throw ParseError("unknown EC curve " + curve);
  }
  throw ParseError("unsupported public key algorithm " + alg_oid);
}

int rsa_modulus_bit_length(ByteView modulus_content) {
  return der::uint_bit_length(modulus_content);
}

}  // namespace ctscan::x509
