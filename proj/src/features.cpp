#include "ctscan/features.hpp"

#include <set>

#include "ctscan/bytes.hpp"
#include "ctscan/error.hpp"

namespace ctscan::features {

const std::array<const char*, kFeatureCount> kFeatureNames = {
    "dn_length",         "dn_attr_count",      "cn_length",
    "cn_subdomain_count", "cn_wildcard",       "key_type",
    "key_bits",          "ca_rarity",          "validity_days",
    "san_count",         "san_avg_length",     "wildcard_name_count",
    "avg_subdomain_count", "validation_type",  "ext_count",
    "ext_size",
};

IssuerFrequencyTable build_issuer_table(
    const std::vector<x509::ParsedCertificate>& corpus) {
  if (corpus.empty()) {
    throw DataError("cannot build an issuer table from an empty corpus");
  }
  std::map<std::string, std::size_t> counts;
  for (const x509::ParsedCertificate& cert : corpus) {
    ++counts[cert.issuer_string];
  }
  IssuerFrequencyTable table;
  table.corpus_size = corpus.size();
  for (const auto& [issuer, count] : counts) {
    table.fractions[issuer] =
        static_cast<double>(count) / static_cast<double>(corpus.size());
  }
  return table;
}

int subdomain_count(std::string_view name) {
  if (name.empty()) return 0;
  int count = 1;
  for (const char c : name) {
    if (c == '.') ++count;
  }
  return count;
}

FeatureVector extract(const x509::ParsedCertificate& cert,
                      const IssuerFrequencyTable& table) {
  FeatureVector v = FeatureVector::Zero();

  v[kDnLength] = static_cast<double>(utf8_length(x509::dn_to_string(cert.subject)));
  v[kDnAttrCount] = static_cast<double>(cert.subject.attributes.size());

  if (cert.common_name) {
    v[kCnLength] = static_cast<double>(utf8_length(*cert.common_name));
    v[kCnSubdomainCount] = subdomain_count(*cert.common_name);
    v[kCnWildcard] = cert.common_name->find('*') != std::string::npos ? 1.0 : 0.0;
  }

  v[kKeyType] = cert.key.kind == x509::KeyKind::kRsa ? 1.0 : 0.0;
  v[kKeyBits] = cert.key.bits;
  v[kCaRarity] = table.lookup(cert.issuer_string);
  v[kValidityDays] =
      static_cast<double>(cert.not_after - cert.not_before) / 86400.0;

  // san_count covers every SAN entry; length and subdomain statistics use the
  // DNS-kind entries only.
  v[kSanCount] = static_cast<double>(cert.san.size());
  std::size_t dns_count = 0;
  std::size_t dns_length_sum = 0;
  std::set<std::string_view> names;  // distinct over {CN} union dns SANs
  for (const x509::SanEntry& entry : cert.san) {
    if (entry.kind != x509::SanKind::kDns) continue;
    ++dns_count;
    dns_length_sum += utf8_length(entry.value);
    names.insert(entry.value);
  }
  if (dns_count > 0) {
    v[kSanAvgLength] =
        static_cast<double>(dns_length_sum) / static_cast<double>(dns_count);
  }
  if (cert.common_name) names.insert(*cert.common_name);

  int wildcard_names = 0;
  int subdomain_sum = 0;
  for (const std::string_view name : names) {
    if (name.find('*') != std::string_view::npos) ++wildcard_names;
    subdomain_sum += subdomain_count(name);
  }
  v[kWildcardNameCount] = wildcard_names;
  if (!names.empty()) {
    v[kAvgSubdomainCount] =
        static_cast<double>(subdomain_sum) / static_cast<double>(names.size());
  }

  v[kValidationType] = x509::classify_validation(cert.policy_oids);
  v[kExtCount] = static_cast<double>(cert.extensions.size());

  double ext_size = 0;
  for (const x509::ExtensionRecord& ext : cert.extensions) {
    if (ext.oid == x509::kOidSubjectAltName) continue;
    ext_size += static_cast<double>(ext.value_length);
  }
  v[kExtSize] = ext_size;

  return v;
}

Eigen::MatrixXd to_matrix(const std::vector<FeatureVector>& rows) {
  if (rows.empty()) {
    throw DataError("cannot build a feature matrix from zero rows");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), kFeatureCount);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) = rows[i];
  }
  return m;
}

}  // namespace ctscan::features
