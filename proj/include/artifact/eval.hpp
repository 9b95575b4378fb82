#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "artifact/datamodel.hpp"

namespace artifact {

// Fraction of gold examples whose predicted label (argmax of logits over
// label_order) matches. Every gold id must carry exactly one prediction.
double nli_accuracy(const std::vector<PredictionRecord>& predictions,
                    const std::vector<NliExample>& gold,
                    const std::vector<std::string>& label_order);

struct QaNormalizationOptions {
  bool remove_articles = true;  // English article list {a, an, the}
  bool ascii_punctuation_only = false;
};

// Lowercase, strip punctuation, drop articles, collapse whitespace.
std::string normalize_answer(const std::string& answer, const QaNormalizationOptions& options = {});

struct QaScore {
  double f1 = 0.0;
  double em = 0.0;
};

// Token-bag F1 and exact match over normalized strings, maximized over
// the gold answers. Both-empty normalized compares equal; empty against
// non-empty scores zero.
QaScore qa_scores(const std::string& predicted, const std::vector<std::string>& gold_answers,
                  const QaNormalizationOptions& options = {});

enum class GroupField { genre, language, provenance };
GroupField group_field_from_string(const std::string& name);

// Accuracy per distinct group value. Matched/mismatched split markers
// ("_matched"/"_mismatched" suffixes) pool into one group.
std::map<std::string, double> grouped_accuracy(const std::vector<PredictionRecord>& predictions,
                                               const std::vector<NliExample>& gold,
                                               GroupField group_field,
                                               const std::vector<std::string>& label_order);

struct ResultTable {
  struct Row {
    std::string system;
    std::optional<int> seed;
    std::optional<int> epoch;
    std::vector<double> values;
  };
  std::vector<std::string> columns;
  std::vector<Row> rows;

  void validate() const;  // unique keys, finite values, row arity
  std::string to_json() const;
  static ResultTable from_json_file(const std::string& path);
};

// Element-wise mean and population standard deviation over one table per
// seed; all tables must agree on columns and on (system, epoch) row
// sequences.
std::pair<ResultTable, ResultTable> aggregate_runs(const std::vector<ResultTable>& tables);

// Epoch with the highest unweighted average accuracy across languages;
// ties break toward the earliest epoch.
int select_best_checkpoint(const std::map<int, std::vector<double>>& dev_results);

}  // namespace artifact
