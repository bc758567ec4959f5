#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "semdrift/core/fact_sequence.hpp"

namespace semdrift::core {

// Prevalence of the paragraph's subject in pretraining-style data. The five
// named classes follow the FActScore dataset labels.
enum class PopularityClass { very_rare, rare, medium, frequent, very_frequent, unknown };

std::string_view to_string(PopularityClass c);

// Accepts the canonical kebab-case names as well as the spellings found in
// FActScore dumps ("very rare", "very freq", "freq", ...). Anything else is
// std::nullopt.
std::optional<PopularityClass> parse_popularity(std::string_view s);

struct AtomicFact {
  std::string text;
  bool supported = false;
  std::size_t sentence_index = 0;
  std::size_t fact_index = 0;
  // Fields not known to this library, kept for round-tripping.
  nlohmann::json extra = nlohmann::json::object();

  bool operator==(const AtomicFact&) const = default;
};

struct AnnotatedParagraph {
  std::string topic;
  std::vector<std::string> sentences;
  std::vector<AtomicFact> facts;  // ordered by fact_index
  PopularityClass popularity = PopularityClass::unknown;
  std::string source_strategy;
  nlohmann::json extra = nlohmann::json::object();

  // Throws ValidationError naming the offending field.
  void validate() const;

  FactSequence labels() const;

  // Facts whose sentence_index equals `sentence`.
  std::vector<const AtomicFact*> facts_in_sentence(std::size_t sentence) const;

  // Keeps sentences [0, n) and the facts attached to them.
  AnnotatedParagraph keep_sentences(std::size_t n) const;

  // Index of the sentence holding the fact with fact_index == k.
  std::size_t sentence_of_fact(std::size_t k) const;

  std::string text() const;

  bool operator==(const AnnotatedParagraph&) const = default;
};

}  // namespace semdrift::core
