#include "semdrift/clients/qa.hpp"

#include <fstream>

#include "semdrift/core/error.hpp"
#include "semdrift/core/text.hpp"
#include "semdrift/util/diagnostics.hpp"

namespace semdrift::clients {

QaResult qa_answer(QaClient& client, std::string_view question) {
  if (core::trim(question).empty()) throw ValidationError("question must be non-empty", "question");
  auto result = client.answer(question);
  if (!result.ok()) util::warn("QA call failed for '" + std::string(question) + "': " + result.error);
  return result;
}

FixtureQaClient FixtureQaClient::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read QA fixture " + path.string());
  try {
    const auto j = nlohmann::json::parse(in);
    std::map<std::string, std::string, std::less<>> answers;
    for (auto it = j.begin(); it != j.end(); ++it) answers.emplace(it.key(), it.value().get<std::string>());
    return FixtureQaClient(std::move(answers));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed QA fixture: ") + e.what(), path.string());
  }
}

QaResult FixtureQaClient::answer(std::string_view question) {
  QaResult r;
  r.question = std::string(question);
  if (auto it = answers_.find(question); it != answers_.end()) {
    r.answer = it->second;
  } else {
    r.error = "no fixture answer";
  }
  return r;
}

HttpQaClient::HttpQaClient(Endpoint endpoint, RetryPolicy retry, std::ptrdiff_t max_in_flight)
    : poster_(std::move(endpoint), retry, max_in_flight) {}

QaResult HttpQaClient::answer(std::string_view question) {
  QaResult r;
  r.question = std::string(question);
  try {
    const auto reply = poster_.post("/v1/qa", {{"question", r.question}});
    r.answer = reply.at("answer").get<std::string>();
  } catch (const RemoteError& e) {
    r.error = e.what();
  } catch (const nlohmann::json::exception& e) {
    r.error = std::string("malformed QA reply: ") + e.what();
  }
  return r;
}

}  // namespace semdrift::clients
