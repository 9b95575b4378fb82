#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace artifact {

enum class NliLabel { entailment, neutral, contradiction };
enum class Provenance { original, human_translated, machine_translated, back_translated };
enum class Task { nli, qa };

std::string to_string(NliLabel label);
std::string to_string(Provenance provenance);
NliLabel nli_label_from_string(const std::string& s);
Provenance provenance_from_string(const std::string& s);
Task task_from_string(const std::string& s);

// The canonical label order used for logits unless a caller declares
// another one: entailment, neutral, contradiction.
const std::vector<std::string>& default_nli_labels();

struct NliExample {
  std::string id;
  std::string premise;
  std::string hypothesis;
  NliLabel label = NliLabel::entailment;
  std::string language;
  Provenance provenance = Provenance::original;
  std::optional<std::string> genre;

  bool operator==(const NliExample&) const = default;
};

struct QaAnswer {
  std::string text;
  std::size_t char_start = 0;  // Unicode code point offset into the context
  // Set by span projection when the answer could not be mapped and was
  // kept verbatim in the source language; char_start is not meaningful.
  bool unmapped = false;

  bool operator==(const QaAnswer&) const = default;
};

struct QaExample {
  std::string id;
  std::string context;
  std::string question;
  std::vector<QaAnswer> answers;
  std::string language;
  Provenance provenance = Provenance::original;

  bool operator==(const QaExample&) const = default;
};

struct BitextPair {
  std::string source;
  std::string target;
  std::vector<std::string> source_tokens;
  std::vector<std::string> target_tokens;

  bool operator==(const BitextPair&) const = default;
};

// Whitespace-tokenized pair; the default tokenization for corpus work.
BitextPair make_bitext_pair(std::string source, std::string target);

struct PredictedAnswer {
  std::string text;
  std::size_t char_start = 0;
  double score = 0.0;

  bool operator==(const PredictedAnswer&) const = default;
};

struct PredictionRecord {
  std::string example_id;
  std::vector<double> logits;            // empty for QA records
  std::optional<PredictedAnswer> answer;  // absent for NLI records
  int seed = 0;
  std::optional<int> epoch;

  bool operator==(const PredictionRecord&) const = default;
};

struct AlignLink {
  std::size_t src = 0;
  std::size_t tgt = 0;

  bool operator==(const AlignLink&) const = default;
  auto operator<=>(const AlignLink&) const = default;
};

// Per-sentence link set, kept sorted by (src, tgt) with no duplicates.
struct Alignment {
  std::size_t pair_index = 0;
  std::vector<AlignLink> links;

  bool operator==(const Alignment&) const = default;
  void normalize();  // sort + dedupe
  bool has_link_for_src(std::size_t i) const;
  bool has_link_for_tgt(std::size_t j) const;
};

// Validation: throws ValidationError naming the offending field and id.
void validate(const NliExample& example);
void validate(const QaExample& example);

// JSON Lines loading. Order preserved; every record validated; ids must
// be unique within the file.
std::vector<NliExample> load_nli_dataset(const std::string& path);
std::vector<QaExample> load_qa_dataset(const std::string& path);

void write_nli_dataset(const std::vector<NliExample>& dataset, const std::string& path);
void write_qa_dataset(const std::vector<QaExample>& dataset, const std::string& path);

// Serialization of a single record to its canonical JSON line.
std::string to_json_line(const NliExample& example);
std::string to_json_line(const QaExample& example);
std::string to_json_line(const PredictionRecord& record);

// Lenient import for common public NLI layouts (sentence1/sentence2,
// gold_label, pairID). Missing language/provenance/id fall back to the
// provided defaults or generated line ids.
struct ImportDefaults {
  std::string language = "en";
  Provenance provenance = Provenance::original;
};
std::vector<NliExample> import_nli_dataset(const std::string& path, const ImportDefaults& defaults);

// Prediction files: every line carries example_id and seed plus either a
// logits vector (validated against label_order arity, finite values) or a
// predicted answer. Duplicate (example_id, seed) pairs are rejected.
std::vector<PredictionRecord> load_predictions(const std::string& path,
                                               const std::vector<std::string>& label_order);
void write_predictions(const std::vector<PredictionRecord>& records, const std::string& path);

// Pharaoh alignment format: one line per pair, space-separated "i-j"
// links, empty line for an empty alignment.
std::string to_pharaoh(const Alignment& alignment);
Alignment pharaoh_from_line(const std::string& line, std::size_t pair_index);
std::vector<Alignment> load_pharaoh(const std::string& path);
void write_pharaoh(const std::vector<Alignment>& alignments, const std::string& path);

// Plain line files (one sentence per line).
std::vector<std::string> load_lines(const std::string& path);
void write_lines(const std::vector<std::string>& lines, const std::string& path);

// Whole-file bytes, for digests and byte-identity checks.
std::string read_file_bytes(const std::string& path);

// Atomic write: temp file in the same directory, then rename.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace artifact
