#include "semdrift/core/corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "semdrift/core/error.hpp"
#include "semdrift/core/segmenter.hpp"

namespace semdrift::core {
namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const std::string& where = {}) {
  const std::string field = where.empty() ? key : where + "." + key;
  if (!j.is_object()) throw ValidationError("expected an object", where.empty() ? "record" : where);
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError("missing required field", field);
  return *it;
}

std::string get_string(const json& v, const std::string& field) {
  if (!v.is_string()) throw ValidationError("expected a string", field);
  return v.get<std::string>();
}

std::size_t get_index(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ValidationError("expected a non-negative integer", field);
  }
  return v.get<std::size_t>();
}

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ValidationError("expected a number", field);
  return v.get<double>();
}

bool get_label(const json& v, const std::string& field) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) {
    const auto x = v.get<long long>();
    if (x == 0 || x == 1) return x == 1;
  }
  throw ValidationError("label must be 0 or 1", field);
}

json extras(const json& j, const std::set<std::string>& known) {
  json out = json::object();
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) out[it.key()] = it.value();
  }
  return out;
}

template <typename Record, typename Parse>
IngestResult<Record> read_lines(std::istream& in, Parse parse) {
  IngestResult<Record> result;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json j = json::parse(line);
      result.records.push_back(parse(j));
    } catch (const json::parse_error& e) {
      result.errors.push_back({lineno, "", std::string("malformed JSON: ") + e.what()});
    } catch (const ValidationError& e) {
      result.errors.push_back({lineno, e.field(), e.message()});
    }
  }
  return result;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return in;
}

}  // namespace

json to_json(const AnnotatedParagraph& p) {
  json j = p.extra;
  j["topic"] = p.topic;
  j["sentences"] = p.sentences;
  json facts = json::array();
  for (const auto& f : p.facts) {
    json fj = f.extra;
    fj["text"] = f.text;
    fj["label"] = f.supported ? 1 : 0;
    fj["sentence_index"] = f.sentence_index;
    fj["fact_index"] = f.fact_index;
    facts.push_back(std::move(fj));
  }
  j["facts"] = std::move(facts);
  j["popularity_class"] = std::string(to_string(p.popularity));
  if (!p.source_strategy.empty()) j["source_strategy"] = p.source_strategy;
  return j;
}

AnnotatedParagraph paragraph_from_json(const json& j) {
  static const std::set<std::string> known{"topic", "sentences", "facts", "popularity_class",
                                           "source_strategy"};
  static const std::set<std::string> known_fact{"text", "label", "sentence_index", "fact_index"};
  AnnotatedParagraph p;
  p.topic = get_string(require(j, "topic"), "topic");

  const json& sentences = require(j, "sentences");
  if (!sentences.is_array()) throw ValidationError("expected an array", "sentences");
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    p.sentences.push_back(get_string(sentences[i], "sentences[" + std::to_string(i) + "]"));
  }

  const json& facts = require(j, "facts");
  if (!facts.is_array()) throw ValidationError("expected an array", "facts");
  for (std::size_t i = 0; i < facts.size(); ++i) {
    const std::string where = "facts[" + std::to_string(i) + "]";
    const json& fj = facts[i];
    AtomicFact f;
    f.text = get_string(require(fj, "text", where), where + ".text");
    f.supported = get_label(require(fj, "label", where), where + ".label");
    f.sentence_index = get_index(require(fj, "sentence_index", where), where + ".sentence_index");
    auto fi = fj.find("fact_index");
    f.fact_index = fi == fj.end() ? i : get_index(*fi, where + ".fact_index");
    f.extra = extras(fj, known_fact);
    p.facts.push_back(std::move(f));
  }
  std::stable_sort(p.facts.begin(), p.facts.end(),
                   [](const AtomicFact& a, const AtomicFact& b) { return a.fact_index < b.fact_index; });

  if (auto it = j.find("popularity_class"); it != j.end() && !it->is_null()) {
    const std::string name = get_string(*it, "popularity_class");
    auto cls = parse_popularity(name);
    if (!cls) throw ValidationError("unknown popularity class '" + name + "'", "popularity_class");
    p.popularity = *cls;
  }
  if (auto it = j.find("source_strategy"); it != j.end()) {
    p.source_strategy = get_string(*it, "source_strategy");
  }
  p.extra = extras(j, known);
  p.validate();
  return p;
}

json to_json(const GenerationTrace& t) {
  json j = t.extra;
  if (!t.topic.empty()) j["topic"] = t.topic;
  json tokens = json::array();
  for (const auto& tok : t.tokens) {
    json top = json::array();
    for (const auto& alt : tok.top) top.push_back({{"text", alt.text}, {"logprob", alt.logprob}});
    tokens.push_back({{"text", tok.text}, {"logprob", tok.logprob}, {"top", std::move(top)}});
  }
  j["tokens"] = std::move(tokens);
  j["sentence_boundaries"] = t.sentence_boundaries;
  j["eos_token"] = t.eos_token;
  j["k_max"] = t.k_max;
  return j;
}

GenerationTrace trace_from_json(const json& j) {
  static const std::set<std::string> known{"topic", "tokens", "sentence_boundaries", "eos_token",
                                           "k_max"};
  GenerationTrace t;
  if (auto it = j.find("topic"); it != j.end()) t.topic = get_string(*it, "topic");
  t.eos_token = get_string(require(j, "eos_token"), "eos_token");
  t.k_max = get_index(require(j, "k_max"), "k_max");

  const json& tokens = require(j, "tokens");
  if (!tokens.is_array()) throw ValidationError("expected an array", "tokens");
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string where = "tokens[" + std::to_string(i) + "]";
    TraceToken tok;
    tok.text = get_string(require(tokens[i], "text", where), where + ".text");
    tok.logprob = get_number(require(tokens[i], "logprob", where), where + ".logprob");
    const json& top = require(tokens[i], "top", where);
    if (!top.is_array()) throw ValidationError("expected an array", where + ".top");
    for (std::size_t k = 0; k < top.size(); ++k) {
      const std::string alt = where + ".top[" + std::to_string(k) + "]";
      tok.top.push_back({get_string(require(top[k], "text", alt), alt + ".text"),
                         get_number(require(top[k], "logprob", alt), alt + ".logprob")});
    }
    t.tokens.push_back(std::move(tok));
  }

  const json& bounds = require(j, "sentence_boundaries");
  if (!bounds.is_array()) throw ValidationError("expected an array", "sentence_boundaries");
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    t.sentence_boundaries.push_back(
        get_index(bounds[i], "sentence_boundaries[" + std::to_string(i) + "]"));
  }
  t.extra = extras(j, known);
  t.validate();
  return t;
}

IngestResult<AnnotatedParagraph> read_annotated(std::istream& in) {
  return read_lines<AnnotatedParagraph>(in, paragraph_from_json);
}

IngestResult<GenerationTrace> read_traces(std::istream& in) {
  return read_lines<GenerationTrace>(in, trace_from_json);
}

IngestResult<AnnotatedParagraph> ingest_annotated(const std::filesystem::path& path) {
  auto in = open(path);
  return read_annotated(in);
}

IngestResult<GenerationTrace> ingest_traces(const std::filesystem::path& path) {
  auto in = open(path);
  return read_traces(in);
}

AnyIngestResult ingest_corpus(const std::filesystem::path& path, CorpusFormat format) {
  if (format == CorpusFormat::annotated_jsonl) return ingest_annotated(path);
  return ingest_traces(path);
}

void write_annotated(std::ostream& out, const std::vector<AnnotatedParagraph>& records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

void write_traces(std::ostream& out, const std::vector<GenerationTrace>& records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

IngestResult<SamplePassageSet> read_sample_sets(std::istream& in,
                                                const SentenceSegmenter& segmenter) {
  return read_lines<SamplePassageSet>(in, [&](const json& j) {
    SamplePassageSet s;
    s.topic = get_string(require(j, "topic"), "topic");
    const json& original = require(j, "original");
    if (!original.is_array()) throw ValidationError("expected an array", "original");
    for (std::size_t i = 0; i < original.size(); ++i) {
      s.original_sentences.push_back(get_string(original[i], "original[" + std::to_string(i) + "]"));
    }
    const json& samples = require(j, "samples");
    if (!samples.is_array()) throw ValidationError("expected an array", "samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const std::string where = "samples[" + std::to_string(i) + "]";
      SampledPassage p;
      p.text = get_string(require(samples[i], "text", where), where + ".text");
      p.seed = get_index(require(samples[i], "seed", where), where + ".seed");
      p.sentences = segmenter.sentences(p.text);
      s.samples.push_back(std::move(p));
    }
    if (auto it = j.find("temperature"); it != j.end()) s.params.temperature = get_number(*it, "temperature");
    if (auto it = j.find("top_p"); it != j.end()) s.params.top_p = get_number(*it, "top_p");
    s.validate();
    return s;
  });
}

json to_json(const SamplePassageSet& s) {
  json samples = json::array();
  for (const auto& p : s.samples) samples.push_back({{"text", p.text}, {"seed", p.seed}});
  return {{"topic", s.topic},
          {"original", s.original_sentences},
          {"samples", std::move(samples)},
          {"temperature", s.params.temperature},
          {"top_p", s.params.top_p}};
}

}  // namespace semdrift::core
