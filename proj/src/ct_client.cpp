#include "ctscan/ct_client.hpp"

#include <httplib.h>

#include <atomic>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "ctscan/error.hpp"
#include "ctscan/rng.hpp"

namespace ctscan::ct {

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // leading path component, no trailing slash
  bool https = false;
};

SplitUrl split_url(const std::string& url) {
  SplitUrl out;
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw UsageError("log URL must be absolute: " + url);
  }
  out.https = url.compare(0, scheme_end, "https") == 0;
  const std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    out.origin = url;
  } else {
    out.origin = url.substr(0, path_start);
    out.path = url.substr(path_start);
    while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  }
  return out;
}

const char* proxy_env(bool https) {
  for (const char* name : https
           ? std::initializer_list<const char*>{"HTTPS_PROXY", "https_proxy"}
           : std::initializer_list<const char*>{"HTTP_PROXY", "http_proxy"}) {
    if (const char* v = std::getenv(name); v != nullptr && *v != '\0') return v;
  }
  return nullptr;
}

std::unique_ptr<httplib::Client> make_client(const SplitUrl& url) {
  auto client = std::make_unique<httplib::Client>(url.origin);
  client->set_connection_timeout(std::chrono::seconds(10));
  client->set_read_timeout(std::chrono::seconds(60));
  client->set_follow_location(true);
  if (const char* proxy = proxy_env(url.https)) {
    const SplitUrl p = split_url(proxy);
    const std::size_t colon = p.origin.rfind(':');
    const std::size_t host_start = p.origin.find("://") + 3;
    if (colon > host_start) {
      client->set_proxy(p.origin.substr(host_start, colon - host_start),
                        std::stoi(p.origin.substr(colon + 1)));
    }
  }
  return client;
}

std::string path_prefix(ApiFlavor flavor) {
  return flavor == ApiFlavor::kV1 ? "/ct/v1/" : "/ct/v2/";
}

// GET with retries; returns the response body on HTTP 200.
std::string http_get(const LogEndpoint& endpoint, const std::string& resource,
                     const FetchOptions& options) {
  const SplitUrl url = split_url(endpoint.base_url);
  const std::string path = url.path + path_prefix(endpoint.api_flavor) + resource;
  std::string last_error;
  for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(options.retry_base_delay * (1 << (attempt - 1)));
    }
    const auto client = make_client(url);
    httplib::Result res = client->Get(path);
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) return res->body;
    if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    throw NetworkError("GET " + endpoint.base_url + path + " failed with HTTP " +
                       std::to_string(res->status));
  }
  throw NetworkError("GET " + endpoint.base_url + path + " failed after " +
                     std::to_string(options.max_retries + 1) +
                     " attempts (" + last_error + ")");
}

nlohmann::json parse_body(const std::string& body, const char* what) {
  nlohmann::json doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded()) {
    throw NetworkError(std::string("malformed JSON in ") + what + " response");
  }
  return doc;
}

}  // namespace

SignedTreeHead get_sth(const LogEndpoint& endpoint, const FetchOptions& options) {
  const nlohmann::json doc =
      parse_body(http_get(endpoint, "get-sth", options), "get-sth");
  if (!doc.contains("tree_size") || !doc["tree_size"].is_number_unsigned()) {
    throw NetworkError("get-sth response has no usable tree_size");
  }
  SignedTreeHead sth;
  sth.tree_size = doc["tree_size"].get<std::uint64_t>();
  sth.timestamp = doc.value("timestamp", std::uint64_t{0});
  return sth;
}

std::vector<RawLogEntry> get_entries(const LogEndpoint& endpoint,
                                     std::uint64_t start, std::uint64_t end,
                                     const FetchOptions& options) {
  if (start > end) {
    throw UsageError("get-entries range start exceeds end");
  }
  std::vector<RawLogEntry> out;
  out.reserve(end - start + 1);
  std::uint64_t next = start;
  while (next <= end) {
    const std::uint64_t batch_end =
        std::min(end, next + static_cast<std::uint64_t>(options.max_batch) - 1);
    const std::string resource = "get-entries?start=" + std::to_string(next) +
                                 "&end=" + std::to_string(batch_end);
    const nlohmann::json doc =
        parse_body(http_get(endpoint, resource, options), "get-entries");
    if (!doc.contains("entries") || !doc["entries"].is_array() ||
        doc["entries"].empty()) {
      throw NetworkError("get-entries returned no entries for range [" +
                         std::to_string(next) + ", " + std::to_string(batch_end) +
                         "]");
    }
    for (const nlohmann::json& item : doc["entries"]) {
      if (next > end) break;  // server over-delivered; ignore the excess
      RawLogEntry entry;
      entry.index = next++;
      try {
        entry.leaf_input = base64_decode(item.at("leaf_input").get<std::string>());
        entry.extra_data = base64_decode(item.value("extra_data", std::string{}));
      } catch (const ParseError& e) {
        throw NetworkError("get-entries entry " + std::to_string(entry.index) +
                           ": " + e.what());
      } catch (const nlohmann::json::exception& e) {
        throw NetworkError("get-entries entry " + std::to_string(entry.index) +
                           ": " + e.what());
      }
      entry.entry_kind = peek_entry_kind(entry.leaf_input);
      out.push_back(std::move(entry));
    }
  }
  return out;
}

std::vector<std::uint64_t> sample_indices(std::uint64_t tree_size,
                                          std::uint64_t k, std::uint64_t seed) {
  if (k > tree_size) {
    throw DataError("sample size " + std::to_string(k) +
                    " exceeds log tree size " + std::to_string(tree_size));
  }
  Rng rng(seed);
  return sample_without_replacement(tree_size, k, rng);
}

std::vector<RawLogEntry> fetch_indices(const LogEndpoint& endpoint,
                                       const std::vector<std::uint64_t>& indices,
                                       int workers, const FetchOptions& options) {
  // Consecutive indices collapse into one range request.
  struct Run {
    std::uint64_t start, end;
    std::size_t out_offset;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < indices.size();) {
    std::size_t j = i + 1;
    while (j < indices.size() && indices[j] == indices[j - 1] + 1) ++j;
    runs.push_back({indices[i], indices[j - 1], i});
    i = j;
  }

  std::vector<RawLogEntry> out(indices.size());
  std::atomic<std::size_t> next_run{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&] {
    for (;;) {
      const std::size_t r = next_run.fetch_add(1);
      if (r >= runs.size()) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      try {
        std::vector<RawLogEntry> batch =
            get_entries(endpoint, runs[r].start, runs[r].end, options);
        for (std::size_t i = 0; i < batch.size(); ++i) {
          out[runs[r].out_offset + i] = std::move(batch[i]);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(runs.size())));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace ctscan::ct
