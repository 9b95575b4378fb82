#include "artifact/stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"

#include "artifact/error.hpp"
#include "artifact/text.hpp"

namespace artifact {

using ordered_json = nlohmann::ordered_json;

double lexical_overlap(const std::string& premise, const std::string& hypothesis,
                       TokenizerKind tokenizer) {
  std::set<std::string> premise_types, hypothesis_types;
  for (const std::string& tok : token_surfaces(premise, tokenizer))
    premise_types.insert(text::fold_case(tok));
  for (const std::string& tok : token_surfaces(hypothesis, tokenizer))
    hypothesis_types.insert(text::fold_case(tok));
  if (hypothesis_types.empty())
    throw ValidationError("hypothesis yields no tokens for overlap");
  std::size_t shared = 0;
  for (const std::string& t : hypothesis_types) shared += premise_types.count(t);
  return static_cast<double>(shared) / static_cast<double>(hypothesis_types.size());
}

namespace {

struct Accumulator {
  std::size_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double v) {
    ++count;
    sum += v;
    sum_sq += v * v;
  }
  double mean() const { return sum / static_cast<double>(count); }
  double stddev() const {
    const double m = mean();
    const double var = sum_sq / static_cast<double>(count) - m * m;
    return std::sqrt(std::max(var, 0.0));
  }
};

}  // namespace

OverlapReport overlap_report(
    const std::vector<std::pair<std::string, std::vector<NliExample>>>& datasets,
    TokenizerKind tokenizer) {
  OverlapReport report;
  std::vector<double> overall_means;
  for (const auto& [name, dataset] : datasets) {
    OverlapReport::DatasetBlock block;
    block.name = name;
    block.total = dataset.size();
    std::map<std::tuple<std::string, std::string, std::string>, Accumulator> acc;
    Accumulator overall;
    for (const NliExample& e : dataset) {
      const double v = lexical_overlap(e.premise, e.hypothesis, tokenizer);
      acc[{to_string(e.label), to_string(e.provenance), e.language}].add(v);
      overall.add(v);
    }
    for (const auto& [key, a] : acc) {
      OverlapCell cell;
      cell.count = a.count;
      cell.mean = a.mean();
      cell.stddev = a.stddev();
      block.cells.emplace(key, cell);
    }
    block.overall_mean = overall.count ? overall.mean() : 0.0;
    overall_means.push_back(block.overall_mean);
    report.datasets.push_back(std::move(block));
  }
  report.mean_deltas.assign(datasets.size(), std::vector<double>(datasets.size(), 0.0));
  for (std::size_t a = 0; a < datasets.size(); ++a)
    for (std::size_t b = 0; b < datasets.size(); ++b)
      report.mean_deltas[a][b] = overall_means[a] - overall_means[b];
  return report;
}

std::string OverlapReport::to_json() const {
  ordered_json j;
  j["type"] = "overlap_report";
  j["datasets"] = ordered_json::array();
  for (const DatasetBlock& block : datasets) {
    ordered_json jb;
    jb["name"] = block.name;
    jb["total"] = block.total;
    jb["overall_mean"] = block.overall_mean;
    jb["cells"] = ordered_json::array();
    for (const auto& [key, cell] : block.cells) {
      ordered_json jc;
      jc["label"] = std::get<0>(key);
      jc["provenance"] = std::get<1>(key);
      jc["language"] = std::get<2>(key);
      jc["count"] = cell.count;
      if (cell.mean) jc["mean"] = *cell.mean;
      if (cell.stddev) jc["stddev"] = *cell.stddev;
      jb["cells"].push_back(std::move(jc));
    }
    j["datasets"].push_back(std::move(jb));
  }
  j["mean_deltas"] = mean_deltas;
  return j.dump(2);
}

ClassDistribution class_distribution(const std::vector<PredictionRecord>& predictions,
                                     const std::vector<std::string>& label_order,
                                     const BiasVector* bias) {
  if (predictions.empty())
    throw ValidationError("class distribution of an empty prediction set");
  if (bias && bias->values.size() != label_order.size())
    throw ValidationError("bias arity does not match label count");
  std::vector<std::size_t> counts(label_order.size(), 0);
  for (const PredictionRecord& r : predictions) {
    if (r.logits.size() != label_order.size())
      throw ValidationError("prediction " + r.example_id + " has no logits of arity " +
                            std::to_string(label_order.size()));
    std::size_t best = 0;
    double best_score = r.logits[0] + (bias ? bias->values[0] : 0.0);
    for (std::size_t c = 1; c < r.logits.size(); ++c) {
      const double score = r.logits[c] + (bias ? bias->values[c] : 0.0);
      if (score > best_score) {  // ties stay at the lowest index
        best_score = score;
        best = c;
      }
    }
    ++counts[best];
  }
  ClassDistribution dist;
  dist.labels = label_order;
  dist.support = predictions.size();
  dist.probabilities.reserve(label_order.size());
  for (std::size_t c : counts)
    dist.probabilities.push_back(static_cast<double>(c) / static_cast<double>(predictions.size()));
  return dist;
}

std::string class_distribution_to_json(
    const std::vector<std::pair<std::string, ClassDistribution>>& groups,
    const std::vector<std::string>& label_order) {
  ordered_json j;
  j["type"] = "class_distribution";
  j["label_order"] = label_order;
  j["groups"] = ordered_json::array();
  for (const auto& [name, dist] : groups) {
    ordered_json jg;
    jg["name"] = name;
    jg["support"] = dist.support;
    jg["probabilities"] = dist.probabilities;
    j["groups"].push_back(std::move(jg));
  }
  return j.dump(2);
}

namespace {

std::size_t nearest_rank(const std::vector<std::size_t>& sorted, double percentile) {
  // Nearest-rank definition: the ceil(p/100 * N)-th smallest value.
  const auto n = static_cast<double>(sorted.size());
  std::size_t rank = static_cast<std::size_t>(std::ceil(percentile / 100.0 * n));
  if (rank == 0) rank = 1;
  return sorted[rank - 1];
}

}  // namespace

LengthStats length_stats(const std::vector<NliExample>& dataset, TokenizerKind tokenizer) {
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<std::size_t>> lengths;
  for (const NliExample& e : dataset) {
    const std::string label = to_string(e.label);
    const std::string provenance = to_string(e.provenance);
    lengths[{"premise", label, provenance}].push_back(token_surfaces(e.premise, tokenizer).size());
    lengths[{"hypothesis", label, provenance}].push_back(
        token_surfaces(e.hypothesis, tokenizer).size());
  }
  LengthStats stats;
  for (auto& [key, values] : lengths) {
    std::sort(values.begin(), values.end());
    Accumulator acc;
    for (std::size_t v : values) acc.add(static_cast<double>(v));
    LengthCell cell;
    cell.count = values.size();
    cell.mean = acc.mean();
    cell.stddev = acc.stddev();
    cell.p50 = nearest_rank(values, 50);
    cell.p90 = nearest_rank(values, 90);
    cell.p99 = nearest_rank(values, 99);
    stats.cells.emplace(key, cell);
  }
  return stats;
}

std::string LengthStats::to_json() const {
  ordered_json j;
  j["type"] = "length_stats";
  j["cells"] = ordered_json::array();
  for (const auto& [key, cell] : cells) {
    ordered_json jc;
    jc["field"] = std::get<0>(key);
    jc["label"] = std::get<1>(key);
    jc["provenance"] = std::get<2>(key);
    jc["count"] = cell.count;
    jc["mean"] = cell.mean;
    jc["stddev"] = cell.stddev;
    jc["p50"] = cell.p50;
    jc["p90"] = cell.p90;
    jc["p99"] = cell.p99;
    j["cells"].push_back(std::move(jc));
  }
  return j.dump(2);
}

}  // namespace artifact
