#include "semdrift/core/segmenter.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "semdrift/core/error.hpp"
#include "semdrift/core/text.hpp"
#include "semdrift/util/assets.hpp"

namespace semdrift::core {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_closing(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

bool starts_sentence(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isupper(u) || std::isdigit(u) || c == '"' || c == '\'' || c == '(' || u >= 0x80;
}

std::size_t skip_space(std::string_view text, std::size_t i) {
  while (i < text.size() && is_space(text[i])) ++i;
  return i;
}

}  // namespace

std::vector<std::string> SentenceSegmenter::sentences(std::string_view text) const {
  std::vector<std::string> out;
  for (const auto& span : split(text)) {
    out.emplace_back(text.substr(span.begin, span.end - span.begin));
  }
  return out;
}

RuleBasedSegmenter::RuleBasedSegmenter(std::set<std::string> abbreviations)
    : abbreviations_(std::move(abbreviations)) {}

const RuleBasedSegmenter& RuleBasedSegmenter::standard() {
  static const RuleBasedSegmenter instance(parse_abbreviations(assets::abbreviations()));
  return instance;
}

RuleBasedSegmenter RuleBasedSegmenter::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read abbreviation list " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return RuleBasedSegmenter(parse_abbreviations(buf.str()));
}

std::set<std::string> RuleBasedSegmenter::parse_abbreviations(std::string_view text) {
  std::set<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string_view v = trim(line);
    if (v.empty() || v.front() == '#') continue;
    std::string word;
    for (char c : v) word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    out.insert(std::move(word));
  }
  return out;
}

bool RuleBasedSegmenter::is_abbreviation(std::string_view text, std::size_t period) const {
  std::size_t w = period;
  while (w > 0 && !is_space(text[w - 1]) && text[w - 1] != '(' && text[w - 1] != '"') --w;
  if (w == period) return false;
  std::string word;
  for (std::size_t i = w; i < period; ++i) {
    word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
  }
  if (word.size() == 1 && std::isupper(static_cast<unsigned char>(text[w]))) return is_initial(text, w, period);
  return abbreviations_.count(word) > 0;
}

bool RuleBasedSegmenter::is_initial(std::string_view text, std::size_t word_begin, std::size_t period) {
  std::size_t pe = word_begin;
  while (pe > 0 && is_space(text[pe - 1])) --pe;
  std::size_t pb = pe;
  while (pb > 0 && !is_space(text[pb - 1])) --pb;
  const std::string_view prev = text.substr(pb, pe - pb);

  const std::size_t nb = skip_space(text, period + 1);
  std::size_t ne = nb;
  while (ne < text.size() && !is_space(text[ne])) ++ne;
  const std::string_view next = text.substr(nb, ne - nb);

  auto initial = [](std::string_view s) {
    return s.size() == 2 && std::isupper(static_cast<unsigned char>(s[0])) && s[1] == '.';
  };
  auto capitalized = [](std::string_view s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])) && !is_terminator(s.back());
  };
  if (initial(prev) || initial(next)) return true;
  return capitalized(prev) && !next.empty() && std::isupper(static_cast<unsigned char>(next[0]));
}

std::vector<SentenceSpan> RuleBasedSegmenter::split(std::string_view text) const {
  std::vector<SentenceSpan> spans;
  const std::size_t n = text.size();
  std::size_t begin = skip_space(text, 0);
  std::size_t i = begin;
  while (i < n) {
    if (!is_terminator(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && is_terminator(text[j])) ++j;
    const bool single_period = text[i] == '.' && j - i == 1;
    while (j < n && is_closing(text[j])) ++j;

    bool boundary = false;
    if (j == n) {
      boundary = true;
    } else if (is_space(text[j])) {
      const std::size_t next = skip_space(text, j);
      boundary = next == n ||
                 (starts_sentence(text[next]) && !(single_period && is_abbreviation(text, i)));
    }
    if (boundary) {
      spans.push_back({begin, j, true});
      begin = skip_space(text, j);
      i = begin;
    } else {
      i = j;
    }
  }
  if (begin < n) {
    std::size_t end = n;
    while (end > begin && is_space(text[end - 1])) --end;
    spans.push_back({begin, end, false});
  }
  return spans;
}

std::string strip_unfinished_tail(std::string_view text, const SentenceSegmenter& segmenter) {
  auto spans = segmenter.split(text);
  if (!spans.empty() && !spans.back().terminated) spans.pop_back();
  auto sentence = [&](const SentenceSpan& s) {
    return collapse_whitespace(text.substr(s.begin, s.end - s.begin));
  };
  while (spans.size() >= 2 && sentence(spans.back()) == sentence(spans[spans.size() - 2])) {
    spans.pop_back();
  }
  if (spans.empty()) return {};
  return std::string(text.substr(0, spans.back().end));
}

std::string strip_unfinished_tail(std::string_view text) {
  return strip_unfinished_tail(text, RuleBasedSegmenter::standard());
}

}  // namespace semdrift::core
