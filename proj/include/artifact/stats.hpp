#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "artifact/datamodel.hpp"
#include "artifact/tokenizer.hpp"

namespace artifact {

struct ClassDistribution {
  std::vector<std::string> labels;
  std::vector<double> probabilities;  // sums to 1 over support
  std::size_t support = 0;
};

struct BiasVector {
  std::vector<double> values;
};

// Share of unique hypothesis tokens also present in the premise,
// case-folded. The measure is hypothesis-normalized and therefore
// asymmetric. Throws when the hypothesis yields no tokens.
double lexical_overlap(const std::string& premise, const std::string& hypothesis,
                       TokenizerKind tokenizer = TokenizerKind::word);

struct OverlapCell {
  std::size_t count = 0;
  std::optional<double> mean;  // absent for empty cells
  std::optional<double> stddev;
};

struct OverlapReport {
  struct DatasetBlock {
    std::string name;
    // keyed by (label, provenance, language)
    std::map<std::tuple<std::string, std::string, std::string>, OverlapCell> cells;
    double overall_mean = 0.0;
    std::size_t total = 0;
  };
  std::vector<DatasetBlock> datasets;
  // mean overlap delta for every ordered dataset pair (row minus column)
  std::vector<std::vector<double>> mean_deltas;

  std::string to_json() const;
};

OverlapReport overlap_report(const std::vector<std::pair<std::string, std::vector<NliExample>>>& datasets,
                             TokenizerKind tokenizer = TokenizerKind::word);

// Distribution of argmax(logits + bias), ties to the lowest label index.
ClassDistribution class_distribution(const std::vector<PredictionRecord>& predictions,
                                     const std::vector<std::string>& label_order,
                                     const BiasVector* bias = nullptr);

std::string class_distribution_to_json(
    const std::vector<std::pair<std::string, ClassDistribution>>& groups,
    const std::vector<std::string>& label_order);

struct LengthCell {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t p50 = 0;  // nearest-rank percentiles in tokens
  std::size_t p90 = 0;
  std::size_t p99 = 0;
};

struct LengthStats {
  // keyed by (field, label, provenance)
  std::map<std::tuple<std::string, std::string, std::string>, LengthCell> cells;

  std::string to_json() const;
};

LengthStats length_stats(const std::vector<NliExample>& dataset,
                         TokenizerKind tokenizer = TokenizerKind::word);

}  // namespace artifact
