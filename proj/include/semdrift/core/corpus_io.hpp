#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "semdrift/core/paragraph.hpp"
#include "semdrift/core/samples.hpp"
#include "semdrift/core/trace.hpp"

namespace semdrift::core {

enum class CorpusFormat { annotated_jsonl, trace_jsonl };

struct RecordError {
  std::size_t line = 0;  // 1-based
  std::string field;
  std::string message;
};

template <typename Record>
struct IngestResult {
  std::vector<Record> records;
  std::vector<RecordError> errors;
};

using AnyIngestResult = std::variant<IngestResult<AnnotatedParagraph>, IngestResult<GenerationTrace>>;

// JSON mapping. *_from_json throws ValidationError naming the field.
nlohmann::json to_json(const AnnotatedParagraph& p);
nlohmann::json to_json(const GenerationTrace& t);
AnnotatedParagraph paragraph_from_json(const nlohmann::json& j);
GenerationTrace trace_from_json(const nlohmann::json& j);

// Blank lines are skipped; malformed or invalid lines are reported in
// `errors` and the remaining lines are still read.
IngestResult<AnnotatedParagraph> read_annotated(std::istream& in);
IngestResult<GenerationTrace> read_traces(std::istream& in);

// Throws IoError when the file cannot be opened.
AnyIngestResult ingest_corpus(const std::filesystem::path& path, CorpusFormat format);
IngestResult<AnnotatedParagraph> ingest_annotated(const std::filesystem::path& path);
IngestResult<GenerationTrace> ingest_traces(const std::filesystem::path& path);

void write_annotated(std::ostream& out, const std::vector<AnnotatedParagraph>& records);
void write_traces(std::ostream& out, const std::vector<GenerationTrace>& records);

// samples-jsonl: {"topic", "original": [sentences], "samples": [{"text", "seed"}],
// "temperature", "top_p"}. Sample sentences are produced by `segmenter`.
class SentenceSegmenter;
IngestResult<SamplePassageSet> read_sample_sets(std::istream& in, const SentenceSegmenter& segmenter);
nlohmann::json to_json(const SamplePassageSet& s);

}  // namespace semdrift::core
