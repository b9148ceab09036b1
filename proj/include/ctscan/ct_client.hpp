#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "ctscan/ct_leaf.hpp"

namespace ctscan::ct {

enum class ApiFlavor { kV1, kV2 };

// RFC 6962 logs serve under /ct/v1/, RFC 9162 logs under /ct/v2/. The JSON
// body shape (tree_size, entries[].leaf_input/extra_data, base64) is the
// same for both here.
struct LogEndpoint {
  std::string base_url;  // absolute, e.g. "https://ct.example.org/2024"
  ApiFlavor api_flavor = ApiFlavor::kV1;
};

struct SignedTreeHead {
  std::uint64_t tree_size = 0;
  std::uint64_t timestamp = 0;  // milliseconds since epoch
};

struct FetchOptions {
  // Logs cap get-entries batches; never ask for more than this per call.
  int max_batch = 256;
  // Transport errors and HTTP 5xx retry with exponential backoff
  // (base, 2*base, 4*base); 4xx is terminal.
  int max_retries = 3;
  std::chrono::milliseconds retry_base_delay{1000};
};

SignedTreeHead get_sth(const LogEndpoint& endpoint,
                       const FetchOptions& options = {});

// Entries start..end inclusive, reassembled transparently when the log
// truncates a batch. Indices are assigned from the requested range.
std::vector<RawLogEntry> get_entries(const LogEndpoint& endpoint,
                                     std::uint64_t start, std::uint64_t end,
                                     const FetchOptions& options = {});

// k distinct indices in [0, tree_size), uniform without replacement,
// ascending, a pure function of (tree_size, k, seed).
std::vector<std::uint64_t> sample_indices(std::uint64_t tree_size,
                                          std::uint64_t k, std::uint64_t seed);

// Fetches a sparse ascending index list, grouping consecutive runs into
// range requests and spreading runs over `workers` threads. The result is
// ordered by index regardless of completion order.
std::vector<RawLogEntry> fetch_indices(const LogEndpoint& endpoint,
                                       const std::vector<std::uint64_t>& indices,
                                       int workers,
                                       const FetchOptions& options = {});

}  // namespace ctscan::ct
