#pragma once

#include <Eigen/Core>
#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ctscan/x509.hpp"

namespace ctscan::features {

inline constexpr int kFeatureCount = 16;

// Canonical feature order. Every serialized form (CSV header, matrix
// columns, model feature_order) follows this list.
enum Col : int {
  kDnLength = 0,
  kDnAttrCount = 1,
  kCnLength = 2,
  kCnSubdomainCount = 3,
  kCnWildcard = 4,
  kKeyType = 5,  // ECDSA -> 0, RSA -> 1
  kKeyBits = 6,
  kCaRarity = 7,
  kValidityDays = 8,
  kSanCount = 9,
  kSanAvgLength = 10,
  kWildcardNameCount = 11,
  kAvgSubdomainCount = 12,
  kValidationType = 13,
  kExtCount = 14,
  kExtSize = 15,
};

extern const std::array<const char*, kFeatureCount> kFeatureNames;

using FeatureVector = Eigen::Matrix<double, 1, kFeatureCount>;

// Fraction of the corpus sharing each issuer DN string. Issuers absent from
// the table score a rarity of 0 (rarer than anything observed).
struct IssuerFrequencyTable {
  std::map<std::string, double> fractions;
  std::size_t corpus_size = 0;

  double lookup(const std::string& issuer) const {
    const auto it = fractions.find(issuer);
    return it == fractions.end() ? 0.0 : it->second;
  }
};

IssuerFrequencyTable build_issuer_table(
    const std::vector<x509::ParsedCertificate>& corpus);

// Number of period-separated labels: "www.uniba.sk" -> 3, "" -> 0. A leading
// wildcard label counts like any other label.
int subdomain_count(std::string_view name);

FeatureVector extract(const x509::ParsedCertificate& cert,
                      const IssuerFrequencyTable& table);

// Rows in input order, columns in canonical order.
Eigen::MatrixXd to_matrix(const std::vector<FeatureVector>& rows);

}  // namespace ctscan::features
