#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctscan/features.hpp"

namespace ctscan::stats {

struct FeatureSummary {
  std::string name;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
  std::int64_t count = 0;
};

struct HistogramBucket {
  double lo = 0;
  double hi = 0;  // bucket covers [lo, hi)
  std::int64_t count = 0;
};

struct StatsReport {
  std::int64_t records = 0;
  std::vector<FeatureSummary> summaries;
  // (key_type code, key_bits) -> fraction of records
  std::map<std::pair<int, int>, double> key_length_fractions;
  std::vector<std::pair<std::string, double>> top_issuers;
  std::size_t distinct_issuers = 0;
  std::map<int, double> validation_shares;
  std::vector<HistogramBucket> validity_hist;
  std::vector<HistogramBucket> san_count_hist;
  std::vector<HistogramBucket> san_avg_length_hist;
  std::vector<HistogramBucket> avg_subdomain_hist;
  std::map<std::string, std::int64_t> drop_counts;
};

// Quantile by linear interpolation between order statistics at rank
// h = (n-1)p (the numpy/R type-7 rule). `sorted_values` must be ascending.
double quantile(const std::vector<double>& sorted_values, double p);

// Five-number summary plus mean per column; one name per column.
std::vector<FeatureSummary> summarize(
    const Eigen::Ref<const Eigen::MatrixXd>& data,
    const std::vector<std::string>& names);

// Fraction of records per (key_type, key_bits) cell, computed from the
// canonical feature columns.
std::map<std::pair<int, int>, double> key_length_crosstab(
    const Eigen::Ref<const Eigen::MatrixXd>& data);

// Full report over a canonical 16-column feature matrix. Histogram buckets:
// validity uses 1-day buckets below 400 days and 30-day buckets above;
// san_count uses unit buckets, san_avg_length width-10, avg_subdomain_count
// width-1. Only non-empty buckets are kept, so counts always sum to the
// record count.
StatsReport build_report(const Eigen::Ref<const Eigen::MatrixXd>& data,
                         const features::IssuerFrequencyTable& issuers,
                         const std::map<std::string, std::int64_t>& drops = {},
                         std::size_t top_issuer_count = 20);

// One CSV per figure-equivalent, written with deterministic formatting:
// feature_boxplots.csv, validity_histogram.csv, san_count_histogram.csv,
// san_avg_length_histogram.csv, avg_subdomain_histogram.csv,
// key_length_crosstab.csv, validation_shares.csv, issuer_top.csv.
void emit_plot_data(const StatsReport& report,
                    const std::filesystem::path& out_dir);

nlohmann::json to_json(const StatsReport& report);

}  // namespace ctscan::stats
