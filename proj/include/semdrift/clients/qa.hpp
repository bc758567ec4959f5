#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "semdrift/clients/http.hpp"

namespace semdrift::clients {

struct QaResult {
  std::string question;
  std::optional<std::string> answer;
  std::string error;  // set when answer is empty

  bool ok() const { return answer.has_value(); }
};

class QaClient {
 public:
  virtual ~QaClient() = default;
  // Failures are reported in the result, not thrown.
  virtual QaResult answer(std::string_view question) = 0;
};

// Throws ValidationError on an empty question; otherwise forwards.
QaResult qa_answer(QaClient& client, std::string_view question);

// Answers from a fixed question -> answer table; unmapped questions fail.
class FixtureQaClient : public QaClient {
 public:
  explicit FixtureQaClient(std::map<std::string, std::string, std::less<>> answers)
      : answers_(std::move(answers)) {}
  // JSON object mapping question strings to answers.
  static FixtureQaClient from_file(const std::filesystem::path& path);

  QaResult answer(std::string_view question) override;

 private:
  std::map<std::string, std::string, std::less<>> answers_;
};

// POST {base}/v1/qa {"question"} -> {"answer"}
class HttpQaClient : public QaClient {
 public:
  explicit HttpQaClient(Endpoint endpoint, RetryPolicy retry = {}, std::ptrdiff_t max_in_flight = 4);

  QaResult answer(std::string_view question) override;

 private:
  JsonPoster poster_;
};

}  // namespace semdrift::clients
