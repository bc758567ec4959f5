#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semdrift/clients/generator.hpp"
#include "semdrift/clients/qa.hpp"
#include "semdrift/metrics/flops.hpp"

namespace semdrift::decoding {

struct CallRecord {
  std::string question;
  std::optional<std::string> answer;
  std::string error;
};

struct ToolcallOptions {
  std::optional<std::size_t> max_calls = 1;  // nullopt = unlimited
  int max_tokens = 500;                     // generated tokens over all inferences
  double temperature = 0.6;
  double top_p = 0.9;
  std::uint64_t seed = 0;  // inference i uses seed + i
  bool strip_api_paragraphs = true;
};

struct ToolcallResult {
  std::string passage;
  std::vector<CallRecord> calls;
  std::size_t stripped_paragraphs = 0;
  metrics::SessionLog session;
};

// Drops every blank-line separated paragraph whose first sentence mentions
// "API" as a word outside a call span. Returns the number dropped.
std::size_t strip_api_paragraphs(std::string& text);

// Alternates call prompt -> QA -> answer prompt -> splice, starting from the
// biography prompt for `topic`. Once max_calls calls were attempted it
// continues with plain completions. A failed QA call is logged and the text
// before it kept without a splice. The passage starts at the topic (the
// prompt's lead-in is removed) and passes through strip_unfinished_tail.
ToolcallResult toolcall_generate(std::string_view topic, clients::GeneratorClient& generator,
                                 clients::QaClient& qa, const ToolcallOptions& options = {});

}  // namespace semdrift::decoding
