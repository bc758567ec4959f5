#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semdrift::decoding {

// Call syntax (regular, no nesting):
//   pending:  "[QA(" question ")]"
//   answered: "[QA(" question ")" ws* "->" ws* answer "]"
// The question is non-empty and contains none of "[]()"; the answer contains
// no brackets and is stored trimmed.
struct ToolCall {
  std::string question;
  std::optional<std::string> answer;
  std::size_t begin = 0;  // byte range of the call in the parsed text
  std::size_t end = 0;

  bool pending() const { return !answer.has_value(); }
  bool operator==(const ToolCall&) const = default;
};

struct MalformedSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string reason;
};

// `cleaned` drops every well-formed call together with one adjacent space,
// so "born in [QA(q) -> a] a," becomes "born in a,". Malformed spans stay
// verbatim.
struct ParsedText {
  std::vector<ToolCall> calls;
  std::vector<MalformedSpan> malformed;
  std::string cleaned;
};

ParsedText parse_tool_calls(std::string_view text);

// "[QA(q)]" or "[QA(q) -> a]".
std::string render(const ToolCall& call);

// Joins rendered calls with the given separator texts (separators.size()
// must be calls.size() + 1); span fields of the result are set to where
// each call lands.
std::string render_calls(std::vector<ToolCall>& calls, const std::vector<std::string>& separators);

// Prompt 1: asks the model to insert a pending call into `text`.
std::string call_prompt(std::string_view text);
// Prompt 2: asks the model to continue after an answered call.
std::string answer_prompt(std::string_view text);

// The trailing unterminated sentence of `text` (empty when `text` ends at a
// sentence boundary), without leading whitespace.
std::string unfinished_sentence(std::string_view text);

// Merges the second inference into the passage: `text` + `pre_call` +
// rendered `call` + whatever follows the rendered call in `inference2` (or
// all of `inference2` when the call is not echoed), then removes the call.
std::string splice_answer(std::string_view text, std::string_view pre_call, const ToolCall& call,
                          std::string_view inference2);

}  // namespace semdrift::decoding
