#include "artifact/variant.hpp"

#include <algorithm>

#include "artifact/error.hpp"
#include "artifact/text.hpp"

namespace artifact {

void PipelineSpec::validate_chain() const {
  if (steps.empty()) throw ValidationError("pipeline " + name + " has no steps");
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    if (steps[i].target_lang != steps[i + 1].source_lang)
      throw ValidationError("pipeline " + name + " breaks at step " + std::to_string(i + 1) +
                            ": " + steps[i].to_string() + " then " + steps[i + 1].to_string());
  }
  if (name.starts_with("BT") && steps.back().target_lang != steps.front().source_lang)
    throw ValidationError("back-translation pipeline " + name +
                          " must end in its starting language");
}

const std::string& PipelineSpec::output_language() const {
  if (steps.empty()) throw ValidationError("pipeline " + name + " has no steps");
  return steps.back().target_lang;
}

PipelineSpec parse_pipeline_spec(const std::string& name_or_steps,
                                 const std::string& base_language) {
  PipelineSpec spec;
  if (name_or_steps.find('>') != std::string::npos) {
    spec.name = name_or_steps;
    for (const std::string& part : text::split(name_or_steps, ',')) {
      const auto langs = text::split(part, '>');
      if (langs.size() != 2 || langs[0].empty() || langs[1].empty())
        throw ValidationError("malformed pipeline step \"" + part + "\"; expected src>tgt");
      spec.steps.push_back({langs[0], langs[1]});
    }
    spec.provenance_out = spec.steps.back().target_lang == spec.steps.front().source_lang
                              ? Provenance::back_translated
                              : Provenance::machine_translated;
    spec.validate_chain();
    return spec;
  }
  const auto parts = text::split(name_or_steps, '-');
  if (parts.size() != 2 || (parts[0] != "MT" && parts[0] != "BT"))
    throw ValidationError("unknown pipeline spec \"" + name_or_steps +
                          "\"; expected MT-XX, BT-XX or explicit src>tgt steps");
  if (base_language.empty())
    throw ValidationError("pipeline " + name_or_steps + " needs the dataset's base language");
  std::string pivot = text::fold_case(parts[1]);
  spec.name = name_or_steps;
  if (parts[0] == "MT") {
    spec.steps = {{base_language, pivot}};
    spec.provenance_out = Provenance::machine_translated;
  } else {
    spec.steps = {{base_language, pivot}, {pivot, base_language}};
    spec.provenance_out = Provenance::back_translated;
  }
  spec.validate_chain();
  return spec;
}

namespace {

// Applies every pipeline step to a flat list of texts.
std::vector<std::string> run_pipeline(std::vector<std::string> texts, const PipelineSpec& spec,
                                      TranslationBackend& backend, TranslationCache& cache,
                                      std::size_t batch_size) {
  for (const Direction& step : spec.steps)
    texts = cached_translate(texts, step, backend, cache, batch_size);
  return texts;
}

std::string uniform_base_language(const std::vector<std::string>& languages,
                                  const std::string& what) {
  if (languages.empty()) return "";
  for (const std::string& lang : languages)
    if (lang != languages.front())
      throw ValidationError(what + " mixes languages " + languages.front() + " and " + lang +
                            "; variants are built from a single-language dataset");
  return languages.front();
}

}  // namespace

std::vector<NliExample> build_nli_variant(const std::vector<NliExample>& dataset,
                                          const PipelineSpec& spec, TranslationBackend& backend,
                                          TranslationCache& cache, std::size_t batch_size) {
  spec.validate_chain();
  std::vector<std::string> languages;
  languages.reserve(dataset.size());
  for (const NliExample& e : dataset) languages.push_back(e.language);
  const std::string base = uniform_base_language(languages, "NLI dataset");
  if (!base.empty() && base != spec.steps.front().source_lang)
    throw ValidationError("dataset language " + base + " does not match pipeline start " +
                          spec.steps.front().source_lang);

  std::vector<std::string> texts;
  texts.reserve(dataset.size() * 2);
  for (const NliExample& e : dataset) texts.push_back(e.premise);
  for (const NliExample& e : dataset) texts.push_back(e.hypothesis);
  texts = run_pipeline(std::move(texts), spec, backend, cache, batch_size);

  std::vector<NliExample> out;
  out.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    NliExample e = dataset[i];
    e.premise = texts[i];
    e.hypothesis = texts[dataset.size() + i];
    e.language = spec.output_language();
    e.provenance = spec.provenance_out;
    if (text::trim(e.premise).empty() || text::trim(e.hypothesis).empty())
      throw BackendError("backend produced an empty field for example " + e.id);
    out.push_back(std::move(e));
  }
  return out;
}

QaVariantTexts build_qa_variant_texts(const std::vector<QaExample>& dataset,
                                      const PipelineSpec& spec, TranslationBackend& backend,
                                      TranslationCache& cache, std::size_t batch_size) {
  spec.validate_chain();
  std::vector<std::string> languages;
  languages.reserve(dataset.size());
  for (const QaExample& e : dataset) languages.push_back(e.language);
  const std::string base = uniform_base_language(languages, "QA dataset");
  if (!base.empty() && base != spec.steps.front().source_lang)
    throw ValidationError("dataset language " + base + " does not match pipeline start " +
                          spec.steps.front().source_lang);

  std::vector<std::string> texts;
  texts.reserve(dataset.size() * 2);
  for (const QaExample& e : dataset) texts.push_back(e.context);
  for (const QaExample& e : dataset) texts.push_back(e.question);
  texts = run_pipeline(std::move(texts), spec, backend, cache, batch_size);

  QaVariantTexts out;
  out.contexts.assign(texts.begin(), texts.begin() + static_cast<std::ptrdiff_t>(dataset.size()));
  out.questions.assign(texts.begin() + static_cast<std::ptrdiff_t>(dataset.size()), texts.end());
  return out;
}

}  // namespace artifact
