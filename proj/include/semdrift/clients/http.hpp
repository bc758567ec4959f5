#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <semaphore>
#include <string>

#include <nlohmann/json.hpp>

namespace semdrift::clients {

struct Endpoint {
  std::string base_url;  // scheme://host[:port][/prefix]
  std::string api_key;   // sent as a Bearer token when non-empty
  std::chrono::milliseconds timeout{30000};

  // Reads `url_var` (and optionally `key_var`) from the environment. Throws
  // ConfigError when the URL variable is unset.
  static Endpoint from_env(const char* url_var, const char* key_var = nullptr);
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{200};
  double multiplier = 2.0;
};

// JSON-over-HTTP POST with retry on transport failures and 5xx replies, and a
// bound on concurrent in-flight requests. Safe for concurrent use.
class JsonPoster {
 public:
  JsonPoster(Endpoint endpoint, RetryPolicy retry, std::ptrdiff_t max_in_flight);

  // Throws RemoteError (retriable when the budget ran out on transport/5xx
  // failures) or ProtocolError when the reply is not JSON.
  nlohmann::json post(const std::string& path, const nlohmann::json& body);

  const Endpoint& endpoint() const { return endpoint_; }

 private:
  Endpoint endpoint_;
  RetryPolicy retry_;
  std::string host_;    // scheme://host:port
  std::string prefix_;  // path prefix from base_url
  std::unique_ptr<std::counting_semaphore<>> in_flight_;
};

}  // namespace semdrift::clients
