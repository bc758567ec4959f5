#include "synthetic.hpp"

#include <algorithm>

#include "random.hpp"
#include "semdrift/core/error.hpp"
#include "semdrift/core/segmenter.hpp"

namespace semdrift::testing {

std::vector<PlantedParagraph> planted_corpus(const PlantedOptions& options) {
  Gen gen(options.seed);
  std::vector<PlantedParagraph> out;
  out.reserve(options.n_paragraphs);
  for (std::size_t p = 0; p < options.n_paragraphs; ++p) {
    const std::size_t n = gen.size(2 * options.min_side, std::max(2 * options.min_side, options.max_facts));
    const std::size_t k = gen.size(options.min_side, n - options.min_side);

    PlantedParagraph pp;
    pp.planted_k = k;
    auto& para = pp.paragraph;
    para.topic = "Entity " + std::to_string(p);
    para.source_strategy = "planted";

    std::size_t fact = 0;
    while (fact < n) {
      const std::size_t s = para.sentences.size();
      const std::size_t in_sentence = std::min(n - fact, gen.size(1, options.max_facts_per_sentence));
      std::string sentence = para.topic + " statement " + std::to_string(s);
      for (std::size_t j = 0; j < in_sentence; ++j, ++fact) {
        core::AtomicFact f;
        f.text = para.topic + " fact " + std::to_string(fact);
        f.supported = gen.coin(fact < k ? options.prefix_p : options.suffix_p);
        f.sentence_index = s;
        f.fact_index = fact;
        para.facts.push_back(std::move(f));
        sentence += " claim " + std::to_string(fact);
      }
      para.sentences.push_back(sentence + ".");
    }
    para.validate();
    out.push_back(std::move(pp));
  }
  return out;
}

std::vector<double> label_derived_scores(const core::AnnotatedParagraph& paragraph, double noise, Gen& gen,
                                         double base, double spread) {
  std::vector<double> scores;
  scores.reserve(paragraph.sentences.size());
  for (std::size_t s = 0; s < paragraph.sentences.size(); ++s) {
    const auto facts = paragraph.facts_in_sentence(s);
    double accuracy = 1.0;
    if (!facts.empty()) {
      std::size_t ok = 0;
      for (const auto* f : facts) ok += f->supported ? 1 : 0;
      accuracy = static_cast<double>(ok) / static_cast<double>(facts.size());
    }
    const double v = base + spread * (1.0 - accuracy) + (noise > 0 ? gen.normal(0.0, noise) : 0.0);
    scores.push_back(std::clamp(v, 0.0, 1.0));
  }
  return scores;
}

core::GenerationTrace random_trace(Gen& gen, std::size_t n_tokens, std::size_t k_max, double p_absent) {
  core::GenerationTrace t;
  t.topic = "random";
  t.k_max = k_max;
  std::size_t until_end = gen.size(2, 6);
  for (std::size_t i = 0; i < n_tokens; ++i) {
    core::TraceToken tok;
    const bool ends = --until_end == 0;
    if (ends) until_end = gen.size(2, 6);
    tok.text = ends ? "." : (i == 0 ? "W" : " w") + gen.word(1, 4);
    tok.logprob = -gen.real(0.0, 3.0);
    std::vector<double> lps(k_max);
    for (auto& lp : lps) lp = -gen.real(0.0, 8.0);
    std::sort(lps.begin(), lps.end(), std::greater<>());
    // k_max means absent.
    const std::size_t eos_rank = gen.coin(p_absent) ? k_max : gen.size(0, k_max - 1);
    for (std::size_t r = 0; r < k_max; ++r) {
      const bool is_eos = eos_rank == r;
      tok.top.push_back({is_eos ? t.eos_token : "alt" + std::to_string(r), lps[r]});
    }
    t.tokens.push_back(std::move(tok));
  }
  // Capitalize sentence starts so the segmenter sees them.
  for (std::size_t i = 1; i < t.tokens.size(); ++i) {
    if (t.tokens[i - 1].text == "." && t.tokens[i].text.size() > 1 && t.tokens[i].text[0] == ' ') {
      t.tokens[i].text[1] = 'W';
    }
  }
  t.sentence_boundaries = core::derive_sentence_boundaries(t.tokens, core::RuleBasedSegmenter::standard());
  t.validate();
  return t;
}

clients::Completion ScriptedGenerator::complete(const clients::GeneratorRequest& request) {
  std::lock_guard lock(mutex_);
  requests_.push_back(request);
  if (script_.empty()) throw RemoteError("script exhausted", false);
  auto step = std::move(script_.front());
  script_.pop_front();
  clients::Completion c;
  c.text = std::move(step.text);
  c.finish_reason = std::move(step.finish_reason);
  return c;
}

std::vector<clients::GeneratorRequest> ScriptedGenerator::requests() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

clients::Completion FailingGenerator::complete(const clients::GeneratorRequest&) {
  throw RemoteError("generator unavailable", retriable_);
}

}  // namespace semdrift::testing
