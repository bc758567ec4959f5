#include "semdrift/decoding/toolcall_generate.hpp"

#include <cctype>

#include "semdrift/core/error.hpp"
#include "semdrift/core/segmenter.hpp"
#include "semdrift/core/text.hpp"
#include "semdrift/decoding/tool_call.hpp"

namespace semdrift::decoding {
namespace {

bool mentions_api(std::string_view s) {
  for (auto pos = s.find("API"); pos != std::string_view::npos; pos = s.find("API", pos + 1)) {
    const bool left = pos == 0 || !std::isalnum(static_cast<unsigned char>(s[pos - 1]));
    const bool right = pos + 3 >= s.size() || !std::isalnum(static_cast<unsigned char>(s[pos + 3]));
    if (left && right) return true;
  }
  return false;
}

std::string first_sentence(std::string_view paragraph) {
  const auto spans = core::RuleBasedSegmenter::standard().split(paragraph);
  if (spans.empty()) return std::string(paragraph);
  return std::string(paragraph.substr(spans[0].begin, spans[0].end - spans[0].begin));
}

}  // namespace

std::size_t strip_api_paragraphs(std::string& text) {
  std::vector<std::string> kept;
  std::size_t dropped = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find("\n\n", pos);
    if (next == std::string::npos) next = text.size();
    std::string para = text.substr(pos, next - pos);
    const std::string head = parse_tool_calls(first_sentence(para)).cleaned;
    if (mentions_api(head)) ++dropped;
    else kept.push_back(std::move(para));
    pos = next + 2;
  }
  std::string out;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (i) out += "\n\n";
    out += kept[i];
  }
  text = std::move(out);
  return dropped;
}

ToolcallResult toolcall_generate(std::string_view topic, clients::GeneratorClient& generator,
                                 clients::QaClient& qa, const ToolcallOptions& options) {
  if (options.max_tokens <= 0) throw ConfigError("max_tokens must be positive");
  ToolcallResult out;
  const std::string prompt = clients::biography_prompt(topic);
  std::string text = prompt;
  std::size_t attempted = 0;
  std::uint64_t inference = 0;

  auto run = [&](const std::string& p) {
    clients::GeneratorRequest req;
    req.prompt = p;
    req.max_tokens = options.max_tokens - static_cast<int>(out.session.generator_tokens);
    req.temperature = options.temperature;
    req.top_p = options.top_p;
    req.seed = options.seed + inference++;
    auto c = generator.complete(req);
    ++out.session.generator_passes;
    out.session.generator_tokens +=
        c.trace.tokens.empty() ? core::word_and_punct_tokens(c.text).size() : c.trace.tokens.size();
    return c;
  };
  auto budget_left = [&] { return out.session.generator_tokens < static_cast<std::size_t>(options.max_tokens); };

  while (budget_left()) {
    if (options.max_calls && attempted >= *options.max_calls) {
      const auto c = run(text);
      text += parse_tool_calls(c.text).cleaned;
      break;
    }
    const auto first = run(call_prompt(text));
    const auto parsed = parse_tool_calls(first.text);
    const ToolCall* pending = nullptr;
    for (const auto& call : parsed.calls) {
      if (call.pending()) {
        pending = &call;
        break;
      }
    }
    if (!pending) {
      text += parsed.cleaned;
      if (first.finish_reason == "stop" || first.text.empty()) break;
      continue;
    }
    const std::string pre = parse_tool_calls(first.text.substr(0, pending->begin)).cleaned;
    ++attempted;
    ++out.session.api_calls;
    const auto answer = clients::qa_answer(qa, pending->question);
    out.calls.push_back({pending->question, answer.answer, answer.error});
    if (!answer.ok()) {
      text += pre;
      continue;
    }
    ToolCall answered{pending->question, answer.answer, 0, 0};
    if (!budget_left()) {
      text += pre;
      break;
    }
    const auto second = run(answer_prompt(unfinished_sentence(text + pre) + render(answered)));
    text = splice_answer(text, pre, answered, second.text);
    if (second.finish_reason == "stop") break;
  }

  const auto lead = prompt.rfind(std::string(topic));
  std::string passage = text.substr(lead == std::string::npos ? prompt.size() : lead);
  if (options.strip_api_paragraphs) out.stripped_paragraphs = strip_api_paragraphs(passage);
  out.passage = core::strip_unfinished_tail(passage);
  return out;
}

}  // namespace semdrift::decoding
