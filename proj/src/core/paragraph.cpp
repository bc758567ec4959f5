#include "semdrift/core/paragraph.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "semdrift/core/error.hpp"

namespace semdrift::core {
namespace {

constexpr std::array<std::pair<std::string_view, PopularityClass>, 6> kCanonical{{
    {"very-rare", PopularityClass::very_rare},
    {"rare", PopularityClass::rare},
    {"medium", PopularityClass::medium},
    {"frequent", PopularityClass::frequent},
    {"very-frequent", PopularityClass::very_frequent},
    {"unknown", PopularityClass::unknown},
}};

std::string fold(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == ' ' || c == '_') c = '-';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::string fact_field(std::size_t i, std::string_view name) {
  return "facts[" + std::to_string(i) + "]." + std::string(name);
}

}  // namespace

std::string_view to_string(PopularityClass c) {
  for (const auto& [name, value] : kCanonical) {
    if (value == c) return name;
  }
  return "unknown";
}

std::optional<PopularityClass> parse_popularity(std::string_view s) {
  const std::string f = fold(s);
  for (const auto& [name, value] : kCanonical) {
    if (f == name) return value;
  }
  if (f == "freq") return PopularityClass::frequent;
  if (f == "very-freq") return PopularityClass::very_frequent;
  return std::nullopt;
}

void AnnotatedParagraph::validate() const {
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (sentences[i].empty()) {
      throw ValidationError("sentence must be non-empty", "sentences[" + std::to_string(i) + "]");
    }
  }
  for (std::size_t i = 0; i < facts.size(); ++i) {
    if (facts[i].fact_index != i) {
      throw ValidationError("fact_index values must be unique and contiguous from 0 in order",
                            fact_field(i, "fact_index"));
    }
    if (facts[i].sentence_index >= sentences.size()) {
      throw ValidationError("sentence_index " + std::to_string(facts[i].sentence_index) +
                                " out of range for " + std::to_string(sentences.size()) +
                                " sentences",
                            fact_field(i, "sentence_index"));
    }
  }
}

FactSequence AnnotatedParagraph::labels() const {
  std::vector<std::uint8_t> out;
  out.reserve(facts.size());
  for (const auto& f : facts) out.push_back(f.supported ? 1 : 0);
  return FactSequence(std::move(out));
}

std::vector<const AtomicFact*> AnnotatedParagraph::facts_in_sentence(std::size_t sentence) const {
  std::vector<const AtomicFact*> out;
  for (const auto& f : facts) {
    if (f.sentence_index == sentence) out.push_back(&f);
  }
  return out;
}

AnnotatedParagraph AnnotatedParagraph::keep_sentences(std::size_t n) const {
  AnnotatedParagraph out = *this;
  n = std::min(n, sentences.size());
  out.sentences.resize(n);
  out.facts.clear();
  for (const auto& f : facts) {
    if (f.sentence_index < n) {
      out.facts.push_back(f);
      out.facts.back().fact_index = out.facts.size() - 1;
    }
  }
  return out;
}

std::size_t AnnotatedParagraph::sentence_of_fact(std::size_t k) const {
  if (k >= facts.size()) {
    throw ValidationError("fact index " + std::to_string(k) + " out of range", "facts");
  }
  return facts[k].sentence_index;
}

std::string AnnotatedParagraph::text() const {
  std::string out;
  for (const auto& s : sentences) {
    if (!out.empty()) out.push_back(' ');
    out += s;
  }
  return out;
}

}  // namespace semdrift::core
