#include "semdrift/clients/generator.hpp"

#include "semdrift/core/corpus_io.hpp"
#include "semdrift/core/error.hpp"
#include "semdrift/util/assets.hpp"
#include "semdrift/util/digest.hpp"

namespace semdrift::clients {

using nlohmann::json;

void GeneratorRequest::validate() const {
  if (!(temperature >= 0.0)) throw ValidationError("must be >= 0", "temperature");
  if (!(top_p > 0.0 && top_p <= 1.0)) throw ValidationError("must be in (0, 1]", "top_p");
  if (logprobs_k < 0) throw ValidationError("must be >= 0", "logprobs_k");
  if (max_tokens < 0) throw ValidationError("must be >= 0", "max_tokens");
}

json GeneratorRequest::to_json() const {
  return {{"prompt", prompt},           {"max_tokens", max_tokens}, {"temperature", temperature},
          {"top_p", top_p},             {"seed", seed},             {"logprobs", logprobs_k},
          {"stop", stop_sequences}};
}

GeneratorRequest GeneratorRequest::from_json(const json& j) {
  try {
    GeneratorRequest r;
    r.prompt = j.at("prompt").get<std::string>();
    r.max_tokens = j.value("max_tokens", r.max_tokens);
    r.temperature = j.value("temperature", r.temperature);
    r.top_p = j.value("top_p", r.top_p);
    r.seed = j.value("seed", r.seed);
    r.logprobs_k = j.value("logprobs", r.logprobs_k);
    r.stop_sequences = j.value("stop", r.stop_sequences);
    r.validate();
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed generator request: ") + e.what(), "request");
  }
}

std::string GeneratorRequest::digest() const { return util::sha256_hex(to_json().dump()); }

json Completion::to_json() const {
  return {{"text", text}, {"finish_reason", finish_reason}, {"trace", core::to_json(trace)}};
}

Completion Completion::from_json(const json& j) {
  Completion c;
  c.text = j.at("text").get<std::string>();
  c.finish_reason = j.at("finish_reason").get<std::string>();
  c.trace = core::trace_from_json(j.at("trace"));
  return c;
}

std::string biography_prompt(std::string_view topic) {
  std::string out(assets::biography_prompt());
  const std::string key = "{topic}";
  for (auto pos = out.find(key); pos != std::string::npos; pos = out.find(key, pos + topic.size())) {
    out.replace(pos, key.size(), topic);
  }
  return out;
}

}  // namespace semdrift::clients
