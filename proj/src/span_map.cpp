#include "artifact/span_map.hpp"

#include <algorithm>

#include "json.hpp"

#include "artifact/error.hpp"
#include "artifact/utf8.hpp"

namespace artifact {

std::optional<CharSpan> map_span(const TokenizedText& src, const TokenizedText& tgt,
                                 CharSpan span, const Alignment& alignment) {
  if (span.char_start >= span.char_end)
    throw ValidationError("empty span [" + std::to_string(span.char_start) + ", " +
                          std::to_string(span.char_end) + ")");
  const std::size_t src_len = utf8::length(src.text);
  if (span.char_end > src_len)
    throw ValidationError("span end " + std::to_string(span.char_end) +
                          " past text length " + std::to_string(src_len));

  // Source token indices overlapping the span.
  std::vector<std::size_t> covered;
  for (std::size_t i = 0; i < src.tokens.size(); ++i) {
    const Token& tok = src.tokens[i];
    if (tok.char_start < span.char_end && span.char_start < tok.char_end) covered.push_back(i);
  }
  if (covered.empty()) throw ValidationError("span overlaps no source token");

  bool any = false;
  std::size_t min_tgt = 0, max_tgt = 0;
  for (const AlignLink& link : alignment.links) {
    if (!std::binary_search(covered.begin(), covered.end(), link.src)) continue;
    if (!any) {
      min_tgt = max_tgt = link.tgt;
      any = true;
    } else {
      min_tgt = std::min(min_tgt, link.tgt);
      max_tgt = std::max(max_tgt, link.tgt);
    }
  }
  if (!any) return std::nullopt;
  if (max_tgt >= tgt.tokens.size())
    throw ValidationError("alignment link target " + std::to_string(max_tgt) +
                          " out of bounds for " + std::to_string(tgt.tokens.size()) + " tokens");
  return CharSpan{tgt.tokens[min_tgt].char_start, tgt.tokens[max_tgt].char_end};
}

std::string SpanMapReport::to_json() const {
  nlohmann::ordered_json j;
  j["type"] = "span_map_report";
  j["mapped_count"] = mapped_count;
  j["discarded"] = nlohmann::ordered_json::array();
  for (const Discarded& d : discarded) {
    nlohmann::ordered_json jd;
    jd["id"] = d.id;
    jd["reason"] = d.reason;
    j["discarded"].push_back(std::move(jd));
  }
  j["fallback_source"] = fallback_source;
  return j.dump(2);
}

std::pair<std::vector<QaExample>, SpanMapReport> map_dataset(
    const std::vector<QaExample>& dataset, const std::vector<std::string>& translated_contexts,
    const std::vector<Alignment>& alignments, const SpanMapOptions& options) {
  if (translated_contexts.size() != dataset.size())
    throw ValidationError("got " + std::to_string(translated_contexts.size()) +
                          " translated contexts for " + std::to_string(dataset.size()) +
                          " examples");
  if (alignments.size() != dataset.size())
    throw ValidationError("missing alignments: got " + std::to_string(alignments.size()) +
                          " for " + std::to_string(dataset.size()) + " examples");
  if (!options.translated_questions.empty() &&
      options.translated_questions.size() != dataset.size())
    throw ValidationError("translated questions arity mismatch");

  std::vector<QaExample> out;
  SpanMapReport report;
  for (std::size_t k = 0; k < dataset.size(); ++k) {
    const QaExample& example = dataset[k];
    const TokenizedText src = tokenize(example.context, example.language);
    const TokenizedText tgt = tokenize(translated_contexts[k], options.output_language);

    QaExample mapped = example;
    mapped.context = translated_contexts[k];
    if (!options.translated_questions.empty()) mapped.question = options.translated_questions[k];
    if (!options.output_language.empty()) mapped.language = options.output_language;
    if (options.output_provenance) mapped.provenance = *options.output_provenance;
    mapped.answers.clear();

    for (const QaAnswer& answer : example.answers) {
      const std::size_t len = utf8::length(answer.text);
      const CharSpan span{answer.char_start, answer.char_start + len};
      const auto projected = map_span(src, tgt, span, alignments[k]);
      if (!projected) continue;
      QaAnswer new_answer;
      new_answer.char_start = projected->char_start;
      new_answer.text = utf8::substr(mapped.context, projected->char_start,
                                     projected->char_end - projected->char_start);
      mapped.answers.push_back(std::move(new_answer));
    }

    if (!mapped.answers.empty()) {
      ++report.mapped_count;
      out.push_back(std::move(mapped));
      continue;
    }
    if (options.mode == SpanMapMode::discard) {
      report.discarded.push_back({example.id, "no_aligned_tokens"});
      continue;
    }
    // Fallback: keep the source-language answers verbatim, flagged.
    report.fallback_source.push_back(example.id);
    for (const QaAnswer& answer : example.answers) {
      QaAnswer kept = answer;
      kept.unmapped = true;
      kept.char_start = 0;
      mapped.answers.push_back(std::move(kept));
    }
    out.push_back(std::move(mapped));
  }
  return {std::move(out), std::move(report)};
}

}  // namespace artifact
