#pragma once

#include <optional>
#include <string>
#include <vector>

#include "artifact/datamodel.hpp"
#include "artifact/tokenizer.hpp"

namespace artifact {

struct CharSpan {
  std::size_t char_start = 0;
  std::size_t char_end = 0;  // exclusive

  bool operator==(const CharSpan&) const = default;
};

// Projects a source character span through a token alignment: the result
// covers the contiguous range from the first to the last target token
// aligned to any source token the span overlaps. Returns nullopt when
// none of the span's tokens carry a link. Throws when the span is out of
// bounds or overlaps no source token.
std::optional<CharSpan> map_span(const TokenizedText& src, const TokenizedText& tgt,
                                 CharSpan span, const Alignment& alignment);

enum class SpanMapMode {
  discard,                 // drop examples whose spans cannot be mapped
  fallback_source_answer,  // keep them with the untranslated answer
};

struct SpanMapReport {
  std::size_t mapped_count = 0;
  struct Discarded {
    std::string id;
    std::string reason;  // always "no_aligned_tokens"
  };
  std::vector<Discarded> discarded;
  std::vector<std::string> fallback_source;

  std::string to_json() const;
};

// Options for stamping the projected dataset.
struct SpanMapOptions {
  SpanMapMode mode = SpanMapMode::discard;
  // Replacement questions, index-aligned with the dataset; empty to keep.
  std::vector<std::string> translated_questions;
  std::string output_language;  // empty keeps the input language
  std::optional<Provenance> output_provenance;
};

// Rebuilds a QA dataset over translated contexts. Every answer is mapped
// independently; an example whose answers all fail is discarded or kept
// verbatim depending on the mode. Surviving mapped answers satisfy the
// offset invariant against the translated context; fallback answers are
// flagged unmapped.
std::pair<std::vector<QaExample>, SpanMapReport> map_dataset(
    const std::vector<QaExample>& dataset, const std::vector<std::string>& translated_contexts,
    const std::vector<Alignment>& alignments, const SpanMapOptions& options);

}  // namespace artifact
