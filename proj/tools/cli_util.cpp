#include "cli_util.hpp"

#include <cstdlib>
#include <filesystem>

#include "artifact/error.hpp"
#include "artifact/text.hpp"

namespace artifact::cli {

std::vector<std::string> parse_labels(const std::string& spec) {
  std::vector<std::string> labels;
  for (const std::string& part : text::split(spec, ','))
    if (!part.empty()) labels.push_back(part);
  if (labels.size() < 2) throw ValidationError("label order needs at least 2 labels: " + spec);
  return labels;
}

ClassDistribution parse_target(const std::string& spec, const std::vector<std::string>& labels) {
  ClassDistribution target;
  target.labels = labels;
  if (spec == "uniform") {
    target.probabilities.assign(labels.size(), 1.0 / static_cast<double>(labels.size()));
    return target;
  }
  std::map<std::string, double> by_label;
  for (const std::string& part : text::split(spec, ',')) {
    const auto kv = text::split(part, '=');
    if (kv.size() != 2) throw ValidationError("malformed target entry \"" + part + "\"");
    by_label[kv[0]] = std::stod(kv[1]);
  }
  for (const std::string& label : labels) {
    const auto it = by_label.find(label);
    if (it == by_label.end()) throw ValidationError("target is missing label " + label);
    target.probabilities.push_back(it->second);
    by_label.erase(it);
  }
  if (!by_label.empty())
    throw ValidationError("target names unknown label " + by_label.begin()->first);
  double sum = 0.0;
  for (double p : target.probabilities) sum += p;
  if (sum <= 0.0) throw ValidationError("target probabilities sum to zero");
  for (double& p : target.probabilities) p /= sum;  // tolerate 0.333-style rounding
  return target;
}

std::pair<std::string, std::string> parse_named_path(const std::string& spec) {
  const std::size_t eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size())
    throw ValidationError("expected name=path, got \"" + spec + "\"");
  return {spec.substr(0, eq), spec.substr(eq + 1)};
}

std::string resolve_cache_path(const std::string& path) {
  const char* dir = std::getenv("ARTIFACT_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(dir) / p).string();
}

std::vector<BitextPair> load_bitext(const std::string& src_path, const std::string& tgt_path,
                                    const std::string& tsv_path) {
  std::vector<BitextPair> pairs;
  if (!tsv_path.empty()) {
    if (!src_path.empty() || !tgt_path.empty())
      throw ValidationError("pass either --tsv or --src/--tgt, not both");
    const auto lines = load_lines(tsv_path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto fields = text::split(lines[i], '\t');
      if (fields.size() != 2)
        throw ValidationError(tsv_path + ":" + std::to_string(i + 1) +
                              ": expected 2 tab-separated fields");
      pairs.push_back(make_bitext_pair(fields[0], fields[1]));
    }
    return pairs;
  }
  if (src_path.empty() || tgt_path.empty())
    throw ValidationError("bitext input needs --src and --tgt (or --tsv)");
  const auto src_lines = load_lines(src_path);
  const auto tgt_lines = load_lines(tgt_path);
  if (src_lines.size() != tgt_lines.size())
    throw ValidationError(src_path + " has " + std::to_string(src_lines.size()) + " lines, " +
                          tgt_path + " has " + std::to_string(tgt_lines.size()));
  pairs.reserve(src_lines.size());
  for (std::size_t i = 0; i < src_lines.size(); ++i)
    pairs.push_back(make_bitext_pair(src_lines[i], tgt_lines[i]));
  return pairs;
}

}  // namespace artifact::cli
