#include "artifact/filter.hpp"

#include <algorithm>

#include "json.hpp"

#include "artifact/error.hpp"
#include "artifact/text.hpp"

namespace artifact {

std::string to_string(FilterVerdict verdict) {
  switch (verdict) {
    case FilterVerdict::keep: return "keep";
    case FilterVerdict::too_long: return "too_long";
    case FilterVerdict::ratio: return "ratio";
    case FilterVerdict::langid_source: return "langid_source";
    case FilterVerdict::langid_target: return "langid_target";
  }
  throw ValidationError("unknown filter verdict");
}

std::string FilterReport::to_json() const {
  nlohmann::ordered_json j;
  j["type"] = "filter_report";
  j["total_in"] = total_in;
  j["total_out"] = total_out;
  j["rejected"]["too_long"] = rejected_too_long;
  j["rejected"]["ratio"] = rejected_ratio;
  j["rejected"]["langid_source"] = rejected_langid_source;
  j["rejected"]["langid_target"] = rejected_langid_target;
  return j.dump(2);
}

namespace {

bool langid_mismatch(const LangIdModel& model, const std::string& txt,
                     const std::string& expected, double min_confidence) {
  if (text::trim(txt).empty()) return true;
  const auto pred = model.classify(txt);
  return pred.language != expected || pred.confidence < min_confidence;
}

}  // namespace

FilterVerdict filter_pair(const BitextPair& pair, const LangIdModel* model,
                          const FilterConfig& config) {
  const std::size_t src = pair.source_tokens.size();
  const std::size_t tgt = pair.target_tokens.size();
  if (std::max(src, tgt) > config.max_tokens) return FilterVerdict::too_long;
  const double hi = static_cast<double>(std::max(src, tgt));
  const double lo = static_cast<double>(std::max<std::size_t>(std::min(src, tgt), 1));
  if (hi / lo > config.max_ratio) return FilterVerdict::ratio;
  if (model != nullptr && !config.expected_source_lang.empty() &&
      langid_mismatch(*model, pair.source, config.expected_source_lang,
                      config.langid_min_confidence))
    return FilterVerdict::langid_source;
  if (model != nullptr && !config.expected_target_lang.empty() &&
      langid_mismatch(*model, pair.target, config.expected_target_lang,
                      config.langid_min_confidence))
    return FilterVerdict::langid_target;
  return FilterVerdict::keep;
}

FilterReport filter_corpus(const std::vector<BitextPair>& pairs, const LangIdModel* model,
                           const FilterConfig& config,
                           const std::function<void(const BitextPair&)>& keep_sink) {
  FilterReport report;
  for (const BitextPair& pair : pairs) {
    ++report.total_in;
    switch (filter_pair(pair, model, config)) {
      case FilterVerdict::keep:
        ++report.total_out;
        if (keep_sink) keep_sink(pair);
        break;
      case FilterVerdict::too_long: ++report.rejected_too_long; break;
      case FilterVerdict::ratio: ++report.rejected_ratio; break;
      case FilterVerdict::langid_source: ++report.rejected_langid_source; break;
      case FilterVerdict::langid_target: ++report.rejected_langid_target; break;
    }
  }
  return report;
}

}  // namespace artifact
