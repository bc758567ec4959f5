#include "semdrift/clients/cache.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include "semdrift/core/error.hpp"

namespace semdrift::clients {
namespace {

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

SampleCache::SampleCache(std::filesystem::path path, Clock clock)
    : path_(std::move(path)), clock_(clock ? std::move(clock) : Clock(utc_now)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      entries_.try_emplace(j.at("digest").get<std::string>(), Completion::from_json(j.at("response")));
    } catch (const std::exception& e) {
      throw ValidationError(std::string("malformed cache entry: ") + e.what(),
                            path_.string() + ":" + std::to_string(lineno));
    }
  }
}

std::optional<Completion> SampleCache::lookup(const std::string& digest) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(digest);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void SampleCache::store(const GeneratorRequest& request, const Completion& response) {
  const std::string digest = request.digest();
  std::lock_guard lock(mutex_);
  if (!entries_.try_emplace(digest, response).second) return;
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  std::ofstream out(path_, std::ios::app);
  if (!out) throw IoError("cannot append to cache " + path_.string());
  nlohmann::json entry{{"digest", digest},
                       {"request", request.to_json()},
                       {"response", response.to_json()},
                       {"timestamp", clock_()}};
  out << entry.dump() << '\n';
  out.flush();
  if (!out) throw IoError("cannot append to cache " + path_.string());
}

std::size_t SampleCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

CachingGenerator::CachingGenerator(std::shared_ptr<SampleCache> cache,
                                   std::shared_ptr<GeneratorClient> upstream, bool offline)
    : cache_(std::move(cache)), upstream_(std::move(upstream)), offline_(offline) {}

Completion CachingGenerator::complete(const GeneratorRequest& request) {
  request.validate();
  const std::string digest = request.digest();
  if (auto hit = cache_->lookup(digest)) {
    ++hits_;
    return *hit;
  }
  if (offline_ || !upstream_) {
    throw RemoteError("offline mode: no cached completion for request " + digest.substr(0, 12), false);
  }
  ++upstream_calls_;
  Completion c = upstream_->complete(request);
  cache_->store(request, c);
  return c;
}

}  // namespace semdrift::clients
