#include "semdrift/consistency/ngram.hpp"

#include <cmath>

#include "semdrift/core/error.hpp"
#include "semdrift/core/text.hpp"

namespace semdrift::consistency {
namespace {

constexpr char kSep = '\x1f';

}  // namespace

NgramModel::NgramModel(std::size_t n) : n_(n) {
  if (n == 0) throw ConfigError("n-gram order must be at least 1");
}

std::string NgramModel::context_key(const std::vector<std::string>& tokens, std::size_t i) const {
  const std::size_t len = std::min(i, n_ - 1);
  std::string key = std::to_string(len);
  for (std::size_t j = i - len; j < i; ++j) {
    key.push_back(kSep);
    key += tokens[j];
  }
  return key;
}

void NgramModel::train(const std::vector<std::string>& sentence_tokens) {
  for (std::size_t i = 0; i < sentence_tokens.size(); ++i) {
    const auto ctx = context_key(sentence_tokens, i);
    vocab_.insert(sentence_tokens[i]);
    ++context_counts_[ctx];
    ++pair_counts_[ctx + kSep + kSep + sentence_tokens[i]];
  }
}

double NgramModel::neg_log_prob(const std::vector<std::string>& sentence_tokens, std::size_t i) const {
  const auto ctx = context_key(sentence_tokens, i);
  auto c = context_counts_.find(ctx);
  auto cw = pair_counts_.find(ctx + kSep + kSep + sentence_tokens[i]);
  const double num = static_cast<double>(cw == pair_counts_.end() ? 0 : cw->second) + 1.0;
  const double den = static_cast<double>(c == context_counts_.end() ? 0 : c->second) +
                     static_cast<double>(vocabulary_size());
  return -std::log(num / den);
}

double NgramModel::mean_nll(const std::vector<std::string>& sentence_tokens) const {
  if (sentence_tokens.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < sentence_tokens.size(); ++i) sum += neg_log_prob(sentence_tokens, i);
  return sum / static_cast<double>(sentence_tokens.size());
}

std::vector<double> selfcheck_ngram(const core::SamplePassageSet& set, std::size_t n) {
  set.validate();
  NgramModel model(n);
  std::vector<std::vector<std::string>> original;
  for (const auto& s : set.original_sentences) {
    original.push_back(core::word_and_punct_tokens(s));
    model.train(original.back());
  }
  for (const auto& sample : set.samples) {
    for (const auto& s : sample.sentences) model.train(core::word_and_punct_tokens(s));
  }
  std::vector<double> out;
  for (const auto& toks : original) out.push_back(model.mean_nll(toks));
  return out;
}

}  // namespace semdrift::consistency
