#include "semdrift/clients/stub_generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <optional>
#include <string_view>
#include <utility>

#include "semdrift/core/segmenter.hpp"
#include "semdrift/core/text.hpp"
#include "semdrift/util/assets.hpp"
#include "semdrift/util/digest.hpp"

namespace semdrift::clients {
namespace {

constexpr std::array<std::string_view, 10> kPredicates{
    "was born in {city} in {year}",
    "studied {field} at the University of {city}",
    "worked as a {job} for {count} years",
    "married {name} in {year}",
    "is best known for work on {field}",
    "received the {award} in {year}",
    "moved to {city} in {year}",
    "published a book about {field} in {year}",
    "served as {job} of the {org}",
    "died in {city} in {year}",
};
constexpr std::array<std::string_view, 8> kCities{"Paris", "Vienna", "Lagos", "Lima", "Osaka", "Dublin", "Quebec", "Turin"};
constexpr std::array<std::string_view, 6> kFields{"physics", "history", "music", "law", "botany", "economics"};
constexpr std::array<std::string_view, 6> kJobs{"teacher", "engineer", "journalist", "director", "painter", "surgeon"};
constexpr std::array<std::string_view, 5> kNames{"Anna Weber", "Luis Ortega", "Mei Tanaka", "Omar Haddad", "Ruth Cole"};
constexpr std::array<std::string_view, 4> kAwards{"Lasker Award", "Turner Prize", "Polar Music Prize", "Abel Prize"};
constexpr std::array<std::string_view, 4> kOrgs{"National Library", "City Council", "Royal Society", "Opera House"};
constexpr std::array<std::string_view, 8> kFiller{" the", " a", " and", " of", " his", " her", " in", " with"};

template <std::size_t N>
std::string_view pick(const std::array<std::string_view, N>& xs, std::mt19937_64& rng) {
  return xs[std::uniform_int_distribution<std::size_t>(0, N - 1)(rng)];
}

std::string fill(std::string_view tmpl, std::mt19937_64& rng) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size();) {
    if (tmpl[i] != '{') {
      out.push_back(tmpl[i++]);
      continue;
    }
    const auto close = tmpl.find('}', i);
    const auto slot = tmpl.substr(i + 1, close - i - 1);
    if (slot == "city") out += pick(kCities, rng);
    else if (slot == "field") out += pick(kFields, rng);
    else if (slot == "job") out += pick(kJobs, rng);
    else if (slot == "name") out += pick(kNames, rng);
    else if (slot == "award") out += pick(kAwards, rng);
    else if (slot == "org") out += pick(kOrgs, rng);
    else if (slot == "year") out += std::to_string(std::uniform_int_distribution<int>(1850, 2010)(rng));
    else if (slot == "count") out += std::to_string(std::uniform_int_distribution<int>(2, 30)(rng));
    i = close + 1;
  }
  return out;
}

std::string subject_of(std::string_view prompt) {
  constexpr std::string_view key = "article about ";
  const auto pos = prompt.rfind(key);
  if (pos == std::string_view::npos) return "The subject";
  const auto begin = pos + key.size();
  const auto end = prompt.find('.', begin);
  return std::string(prompt.substr(begin, end == std::string_view::npos ? std::string_view::npos : end - begin));
}

// Splits " word word." into {" word", " word", "."}.
std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ' ' || c == '.') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
      if (c == '.') {
        out.emplace_back(".");
        continue;
      }
    }
    cur.push_back(c);
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

core::TraceToken make_token(std::string text, int k, int eos_rank, const std::string& eos,
                            std::mt19937_64& rng) {
  core::TraceToken tok;
  tok.text = std::move(text);
  double lp = -std::uniform_real_distribution<double>(0.01, 1.5)(rng);
  tok.logprob = lp;
  for (int j = 0; j < k; ++j) {
    std::string alt = j == 0 ? tok.text : std::string(pick(kFiller, rng));
    if (j == eos_rank) alt = eos;
    tok.top.push_back({std::move(alt), lp});
    lp -= std::uniform_real_distribution<double>(0.05, 0.8)(rng);
  }
  return tok;
}

constexpr std::array<std::pair<std::string_view, std::string_view>, 4> kQuestions{{
    {"was born in", "Where was {s} born?"},
    {"grew up in", "Where did {s} grow up?"},
    {"is best known for", "What is {s} best known for?"},
    {"died in", "Where did {s} die?"},
}};

// Text substituted for {text} when `prompt` was built from `tmpl`.
std::optional<std::string_view> template_text(std::string_view prompt, std::string_view tmpl) {
  const auto slot = tmpl.find("{text}");
  if (slot == std::string_view::npos || !prompt.starts_with(tmpl.substr(0, slot))) return std::nullopt;
  return prompt.substr(slot);
}

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

}  // namespace

Completion StubGenerator::complete(const GeneratorRequest& request) {
  request.validate();
  ++calls_;
  if (mode_ == Mode::echo) return echo(request);
  if (auto text = template_text(request.prompt, assets::qa_prompt_call())) return call_inference(request, *text);
  if (auto text = template_text(request.prompt, assets::qa_prompt_answer())) return answer_inference(request, *text);
  return biography(request);
}

Completion StubGenerator::scripted(const GeneratorRequest& request, const std::string& text,
                                   const std::string& finish_reason) const {
  std::mt19937_64 rng(util::sha256_u64(request.prompt + '\x1f' + std::to_string(request.seed)));
  Completion c;
  c.finish_reason = finish_reason;
  c.trace.k_max = static_cast<std::size_t>(request.logprobs_k);
  for (auto& t : tokenize(text)) {
    if (c.trace.tokens.size() >= static_cast<std::size_t>(request.max_tokens)) break;
    c.trace.tokens.push_back(make_token(std::move(t), request.logprobs_k, -1, c.trace.eos_token, rng));
  }
  c.text = c.trace.text();
  c.trace.sentence_boundaries =
      core::derive_sentence_boundaries(c.trace.tokens, core::RuleBasedSegmenter::standard());
  return c;
}

Completion StubGenerator::call_inference(const GeneratorRequest& request, std::string_view text) const {
  // A question is considered asked once its predicate is in the text, answered or not.
  std::size_t asked = 0;
  while (asked < kQuestions.size() && text.find(kQuestions[asked].first) != std::string_view::npos) ++asked;
  if (asked >= kQuestions.size()) {
    GeneratorRequest plain = request;
    plain.prompt = std::string(text);
    return biography(plain);
  }
  const std::string subject = subject_of(text);
  const std::string_view trimmed = core::trim(text);
  const bool mid_sentence = !trimmed.empty() && trimmed.back() != '.';
  const auto& [predicate, question] = kQuestions[asked];
  std::string out;
  if (!mid_sentence) {
    out = " " + subject + " ";
  } else if (trimmed.ends_with(subject)) {
    out = " ";
  } else {
    out = " and ";
  }
  out += std::string(predicate) + " [QA(" + replace_all(std::string(question), "{s}", subject) + ")] and then";
  return scripted(request, out, "length");
}

Completion StubGenerator::answer_inference(const GeneratorRequest& request, std::string_view text) const {
  const auto arrow = text.rfind("->");
  const auto close = text.rfind(']');
  std::string answer = "unknown";
  if (arrow != std::string_view::npos && close != std::string_view::npos && close > arrow) {
    answer = std::string(core::trim(text.substr(arrow + 2, close - arrow - 2)));
  }
  return scripted(request, " " + answer + ".", "length");
}

Completion StubGenerator::echo(const GeneratorRequest& request) const {
  Completion c;
  c.text = request.prompt;
  c.finish_reason = "stop";
  c.trace.k_max = static_cast<std::size_t>(request.logprobs_k);
  std::mt19937_64 rng(util::sha256_u64(request.prompt));
  for (auto& t : tokenize(request.prompt)) {
    c.trace.tokens.push_back(make_token(std::move(t), request.logprobs_k, -1, c.trace.eos_token, rng));
  }
  c.trace.sentence_boundaries =
      core::derive_sentence_boundaries(c.trace.tokens, core::RuleBasedSegmenter::standard());
  return c;
}

Completion StubGenerator::biography(const GeneratorRequest& request) const {
  const std::uint64_t seed = request.temperature == 0.0 ? 0 : request.seed;
  std::mt19937_64 rng(util::sha256_u64(request.prompt + '\x1f' + std::to_string(seed)));

  const std::string subject = subject_of(request.prompt);
  const std::string_view trimmed = core::trim(request.prompt);
  bool mid_sentence = !trimmed.empty() && trimmed.back() != '.' && trimmed.back() != '!' &&
                      trimmed.back() != '?';
  // Sentences already present in the prompt passage drive the EOS rank.
  const std::size_t prior = core::RuleBasedSegmenter::standard().split(request.prompt).size();

  Completion c;
  c.trace.k_max = static_cast<std::size_t>(request.logprobs_k);
  c.trace.topic = subject;
  c.finish_reason = "length";
  const auto max_tokens = static_cast<std::size_t>(request.max_tokens);
  std::size_t sentence = prior;
  while (c.trace.tokens.size() < max_tokens) {
    const bool continues = mid_sentence;
    std::string s = mid_sentence ? " " : " " + subject + " ";
    s += fill(pick(kPredicates, rng), rng);
    s += '.';
    mid_sentence = false;
    auto words = tokenize(s);
    for (std::size_t w = 0; w < words.size() && c.trace.tokens.size() < max_tokens; ++w) {
      const bool opens_sentence = w == 0 && !continues && sentence > 0;
      const int eos_rank = opens_sentence ? std::max(1, 12 - 2 * static_cast<int>(sentence)) : -1;
      c.trace.tokens.push_back(make_token(words[w], request.logprobs_k, eos_rank, c.trace.eos_token, rng));
    }
    ++sentence;
    if (c.trace.tokens.size() < max_tokens && std::uniform_real_distribution<double>(0, 1)(rng) < 0.12) {
      c.finish_reason = "stop";
      break;
    }
  }
  c.text = c.trace.text();
  c.trace.sentence_boundaries =
      core::derive_sentence_boundaries(c.trace.tokens, core::RuleBasedSegmenter::standard());
  return c;
}

}  // namespace semdrift::clients
