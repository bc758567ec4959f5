#include "semdrift/decoding/tool_call.hpp"

#include "semdrift/core/error.hpp"
#include "semdrift/core/segmenter.hpp"
#include "semdrift/core/text.hpp"
#include "semdrift/util/assets.hpp"

namespace semdrift::decoding {
namespace {

constexpr std::string_view kOpen = "[QA(";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

struct Match {
  bool ok = false;
  std::size_t end = 0;
  ToolCall call;
  std::string reason;
};

// Tries to read one call starting at `pos` (which points at "[QA(").
Match read_call(std::string_view text, std::size_t pos) {
  Match m;
  std::size_t i = pos + kOpen.size();
  const std::size_t q_begin = i;
  while (i < text.size() && text[i] != ')' && text[i] != '(' && text[i] != '[' && text[i] != ']') ++i;
  if (i >= text.size() || text[i] != ')') {
    m.reason = "question is not closed by ')'";
    return m;
  }
  if (i == q_begin) {
    m.reason = "empty question";
    return m;
  }
  m.call.question = std::string(text.substr(q_begin, i - q_begin));
  ++i;
  if (i < text.size() && text[i] == ']') {
    m.ok = true;
    m.end = i + 1;
    return m;
  }
  std::size_t j = i;
  while (j < text.size() && is_space(text[j])) ++j;
  if (text.substr(j, 2) != "->") {
    m.reason = "expected ']' or '->' after the question";
    return m;
  }
  j += 2;
  const std::size_t a_begin = j;
  while (j < text.size() && text[j] != '[' && text[j] != ']') ++j;
  if (j >= text.size() || text[j] != ']') {
    m.reason = "answer is not closed by ']'";
    return m;
  }
  m.call.answer = std::string(core::trim(text.substr(a_begin, j - a_begin)));
  m.ok = true;
  m.end = j + 1;
  return m;
}

// End of a malformed span: through the first ']' before the next '[', or up
// to the next '[' or the end of text.
std::size_t malformed_end(std::string_view text, std::size_t pos) {
  for (std::size_t i = pos + 1; i < text.size(); ++i) {
    if (text[i] == ']') return i + 1;
    if (text[i] == '[') return i;
  }
  return text.size();
}

bool closes_clause(char c) { return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?'; }

std::string fill(std::string_view tmpl, std::string_view text) {
  std::string out(tmpl);
  const auto pos = out.find("{text}");
  if (pos == std::string::npos) throw ConfigError("prompt template lacks {text}");
  out.replace(pos, 6, text);
  return out;
}

}  // namespace

ParsedText parse_tool_calls(std::string_view text) {
  ParsedText out;
  std::size_t copied = 0;  // text[0, copied) has been handled
  std::size_t pos = text.find(kOpen);
  while (pos != std::string_view::npos) {
    const Match m = read_call(text, pos);
    if (!m.ok) {
      const auto end = malformed_end(text, pos);
      out.malformed.push_back({pos, end, m.reason});
      pos = text.find(kOpen, end);
      continue;
    }
    ToolCall call = m.call;
    call.begin = pos;
    call.end = m.end;
    out.calls.push_back(call);

    std::string_view before = text.substr(copied, pos - copied);
    std::size_t resume = m.end;
    const char prev = !before.empty() ? before.back() : (out.cleaned.empty() ? '\0' : out.cleaned.back());
    const bool space_before = prev == ' ';
    const bool at_start = prev == '\0';
    const bool at_end = resume >= text.size();
    const char after = at_end ? '\0' : text[resume];
    if (after == ' ' && (space_before || at_start)) {
      ++resume;
    } else if (space_before && (at_end || closes_clause(after))) {
      if (!before.empty()) before.remove_suffix(1);
      else out.cleaned.pop_back();
    }
    out.cleaned += before;
    copied = resume;
    pos = text.find(kOpen, m.end);
  }
  out.cleaned += text.substr(copied);
  return out;
}

std::string render(const ToolCall& call) {
  std::string out = "[QA(" + call.question + ")";
  if (call.answer) out += " -> " + *call.answer;
  out += "]";
  return out;
}

std::string render_calls(std::vector<ToolCall>& calls, const std::vector<std::string>& separators) {
  if (separators.size() != calls.size() + 1) {
    throw ValidationError("need calls + 1 separators", "separators");
  }
  std::string out = separators[0];
  for (std::size_t i = 0; i < calls.size(); ++i) {
    calls[i].begin = out.size();
    out += render(calls[i]);
    calls[i].end = out.size();
    out += separators[i + 1];
  }
  return out;
}

std::string call_prompt(std::string_view text) { return fill(assets::qa_prompt_call(), text); }

std::string answer_prompt(std::string_view text) { return fill(assets::qa_prompt_answer(), text); }

std::string unfinished_sentence(std::string_view text) {
  const auto spans = core::RuleBasedSegmenter::standard().split(text);
  if (spans.empty() || spans.back().terminated) return {};
  std::string_view tail = text.substr(spans.back().begin);
  while (!tail.empty() && is_space(tail.front())) tail.remove_prefix(1);
  return std::string(tail);
}

std::string splice_answer(std::string_view text, std::string_view pre_call, const ToolCall& call,
                          std::string_view inference2) {
  const std::string rendered = render(call);
  std::string_view rest = inference2;
  if (const auto at = inference2.find(rendered); at != std::string_view::npos) {
    rest = inference2.substr(at + rendered.size());
  }
  std::string merged = std::string(text) + std::string(pre_call) + rendered + std::string(rest);
  return parse_tool_calls(merged).cleaned;
}

}  // namespace semdrift::decoding
