#pragma once

#include <atomic>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "semdrift/clients/generator.hpp"

namespace semdrift::clients {

// Append-only log of completions keyed by request digest. One JSON object
// per line: {"digest", "request", "response", "timestamp"}. When a digest
// occurs more than once, the first entry wins, so replays never change.
class SampleCache {
 public:
  using Clock = std::function<std::string()>;

  // Loads existing entries; the file is created on first store(). Malformed
  // lines raise ValidationError with the line number.
  explicit SampleCache(std::filesystem::path path, Clock clock = {});

  std::optional<Completion> lookup(const std::string& digest) const;
  void store(const GeneratorRequest& request, const Completion& response);
  std::size_t size() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  Clock clock_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, Completion> entries_;
};

// Serves completions from the cache and records misses fetched upstream.
// In offline mode (or without an upstream) a miss is a non-retriable
// RemoteError.
class CachingGenerator : public GeneratorClient {
 public:
  CachingGenerator(std::shared_ptr<SampleCache> cache, std::shared_ptr<GeneratorClient> upstream,
                   bool offline);

  Completion complete(const GeneratorRequest& request) override;

  std::size_t upstream_calls() const { return upstream_calls_.load(); }
  std::size_t hits() const { return hits_.load(); }

 private:
  std::shared_ptr<SampleCache> cache_;
  std::shared_ptr<GeneratorClient> upstream_;
  bool offline_;
  std::atomic<std::size_t> upstream_calls_{0};
  std::atomic<std::size_t> hits_{0};
};

}  // namespace semdrift::clients
