#pragma once

#include <string>
#include <vector>

#include "artifact/datamodel.hpp"
#include "artifact/translation.hpp"

namespace artifact {

// An ordered chain of translation directions plus the provenance stamped
// on the output. Every field is translated whole, never sentence-split:
// the training variants exist precisely because fields are translated
// independently of each other.
struct PipelineSpec {
  std::string name;              // e.g. "BT-FI", "MT-ES"
  std::vector<Direction> steps;  // consecutive steps must chain
  Provenance provenance_out = Provenance::machine_translated;

  // Steps must be non-empty and chain target-to-source; a name starting
  // with "BT" must additionally end in its starting language.
  void validate_chain() const;
  const std::string& output_language() const;
};

// Builds a spec from a name like "MT-ES"/"BT-FI" (pivot tag lowercased)
// and the dataset's base language, or from explicit steps "en>fi,fi>en".
PipelineSpec parse_pipeline_spec(const std::string& name_or_steps, const std::string& base_language);

// Translated texts for a QA dataset, index-aligned with the input
// records. Answer spans are not repaired here; span projection owns that.
struct QaVariantTexts {
  std::vector<std::string> contexts;
  std::vector<std::string> questions;
};

// Builds a training variant: ids, labels and record count are preserved;
// premise and hypothesis are replaced by step-composed translations;
// language and provenance come from the spec. Equal input texts receive
// identical translations through the shared cache.
std::vector<NliExample> build_nli_variant(const std::vector<NliExample>& dataset,
                                          const PipelineSpec& spec, TranslationBackend& backend,
                                          TranslationCache& cache, std::size_t batch_size = 64);

// QA counterpart: translates context and question independently, returns
// the raw translated texts for span projection.
QaVariantTexts build_qa_variant_texts(const std::vector<QaExample>& dataset,
                                      const PipelineSpec& spec, TranslationBackend& backend,
                                      TranslationCache& cache, std::size_t batch_size = 64);

}  // namespace artifact
