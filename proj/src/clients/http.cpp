#include "semdrift/clients/http.hpp"

#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "semdrift/core/error.hpp"

namespace semdrift::clients {

Endpoint Endpoint::from_env(const char* url_var, const char* key_var) {
  const char* url = std::getenv(url_var);
  if (!url || !*url) throw ConfigError(std::string("environment variable ") + url_var + " is not set");
  Endpoint e;
  e.base_url = url;
  if (key_var) {
    if (const char* key = std::getenv(key_var)) e.api_key = key;
  }
  return e;
}

JsonPoster::JsonPoster(Endpoint endpoint, RetryPolicy retry, std::ptrdiff_t max_in_flight)
    : endpoint_(std::move(endpoint)),
      retry_(retry),
      in_flight_(std::make_unique<std::counting_semaphore<>>(std::max<std::ptrdiff_t>(1, max_in_flight))) {
  const auto scheme = endpoint_.base_url.find("://");
  if (scheme == std::string::npos) throw ConfigError("endpoint URL needs a scheme: " + endpoint_.base_url);
  const auto slash = endpoint_.base_url.find('/', scheme + 3);
  host_ = endpoint_.base_url.substr(0, slash);
  if (slash != std::string::npos) prefix_ = endpoint_.base_url.substr(slash);
  while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
}

nlohmann::json JsonPoster::post(const std::string& path, const nlohmann::json& body) {
  in_flight_->acquire();
  struct Release {
    std::counting_semaphore<>* s;
    ~Release() { s->release(); }
  } release{in_flight_.get()};

  const std::string payload = body.dump();
  auto backoff = retry_.initial_backoff;
  std::string last_error;
  for (int attempt = 1; attempt <= std::max(1, retry_.max_attempts); ++attempt) {
    httplib::Client client(host_);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(endpoint_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(endpoint_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    httplib::Headers headers;
    if (!endpoint_.api_key.empty()) headers.emplace("Authorization", "Bearer " + endpoint_.api_key);

    auto res = client.Post(prefix_ + path, headers, payload, "application/json");
    if (!res) {
      last_error = "request to " + host_ + prefix_ + path + " failed: " + httplib::to_string(res.error());
    } else if (res->status >= 500) {
      last_error = "endpoint " + host_ + prefix_ + path + " returned HTTP " + std::to_string(res->status);
    } else if (res->status >= 400) {
      throw RemoteError("endpoint " + host_ + prefix_ + path + " rejected the request with HTTP " +
                            std::to_string(res->status) + ": " + res->body,
                        false);
    } else {
      try {
        return nlohmann::json::parse(res->body);
      } catch (const nlohmann::json::parse_error& e) {
        throw ProtocolError("reply from " + host_ + prefix_ + path + " is not JSON: " + e.what());
      }
    }
    if (attempt < retry_.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff = std::chrono::milliseconds(static_cast<long long>(backoff.count() * retry_.multiplier));
    }
  }
  throw RemoteError(last_error + " (retry budget exhausted)", true);
}

}  // namespace semdrift::clients
