#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "artifact/datamodel.hpp"
#include "artifact/langid.hpp"

namespace artifact {

struct FilterConfig {
  std::size_t max_tokens = 250;
  double max_ratio = 1.5;
  std::string expected_source_lang;
  std::string expected_target_lang;
  double langid_min_confidence = 0.0;
};

enum class FilterVerdict : std::uint8_t {
  keep,
  too_long,
  ratio,
  langid_source,
  langid_target,
};

std::string to_string(FilterVerdict verdict);

struct FilterReport {
  std::uint64_t total_in = 0;
  std::uint64_t total_out = 0;
  std::uint64_t rejected_too_long = 0;
  std::uint64_t rejected_ratio = 0;
  std::uint64_t rejected_langid_source = 0;
  std::uint64_t rejected_langid_target = 0;

  std::string to_json() const;
};

// First failing rule wins, in the order: too_long, ratio, langid_source,
// langid_target. Length and ratio are over the pair's token lists; the
// ratio is symmetric max/min with the min clamped to 1. Language checks
// run only when a model is supplied and the expected tag is non-empty;
// a side whose trimmed text is empty never matches its expected language.
FilterVerdict filter_pair(const BitextPair& pair, const LangIdModel* model,
                          const FilterConfig& config);

// Order-preserving stream filter. The sink receives every kept pair.
FilterReport filter_corpus(const std::vector<BitextPair>& pairs, const LangIdModel* model,
                           const FilterConfig& config,
                           const std::function<void(const BitextPair&)>& keep_sink);

}  // namespace artifact
