#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace semdrift::core {

// Byte range [begin, end) of one sentence. `terminated` is false for a
// trailing fragment that does not end in . ! or ?.
struct SentenceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool terminated = false;

  bool operator==(const SentenceSpan&) const = default;
};

class SentenceSegmenter {
 public:
  virtual ~SentenceSegmenter() = default;
  virtual std::vector<SentenceSpan> split(std::string_view text) const = 0;

  std::vector<std::string> sentences(std::string_view text) const;
};

// Deterministic rule-based segmenter: a run of terminators (. ! ?),
// optionally followed by closing quotes or brackets, ends a sentence when it
// is followed by whitespace and then an uppercase letter, a digit or an
// opening quote, or by the end of text. A period after a listed
// abbreviation does not end a sentence, nor does one after a capital
// initial inside a run of initials ("J. R. Tolkien") or between two
// capitalized words ("John F. Kennedy").
class RuleBasedSegmenter : public SentenceSegmenter {
 public:
  explicit RuleBasedSegmenter(std::set<std::string> abbreviations);

  // Uses the abbreviation list compiled in from assets/abbreviations.txt.
  static const RuleBasedSegmenter& standard();
  // One abbreviation per line; '#' starts a comment.
  static RuleBasedSegmenter from_file(const std::filesystem::path& path);
  static std::set<std::string> parse_abbreviations(std::string_view text);

  std::vector<SentenceSpan> split(std::string_view text) const override;

 private:
  bool is_abbreviation(std::string_view text, std::size_t period) const;
  static bool is_initial(std::string_view text, std::size_t word_begin, std::size_t period);

  std::set<std::string> abbreviations_;
};

// Drops an unfinished trailing sentence, then drops the final sentence
// while it repeats its predecessor (whitespace-normalized). Text before the
// last kept sentence is returned unchanged. Idempotent.
std::string strip_unfinished_tail(std::string_view text, const SentenceSegmenter& segmenter);
std::string strip_unfinished_tail(std::string_view text);

}  // namespace semdrift::core
