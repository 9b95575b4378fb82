#include "artifact/eval.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "json.hpp"

#include "artifact/error.hpp"
#include "artifact/text.hpp"
#include "artifact/utf8.hpp"

namespace artifact {

using ordered_json = nlohmann::ordered_json;

namespace {

std::size_t argmax_label(const std::vector<double>& logits) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < logits.size(); ++c)
    if (logits[c] > logits[best]) best = c;
  return best;
}

// gold id -> predicted label index, enforcing the one-prediction-per-id
// contract.
std::unordered_map<std::string, std::size_t> prediction_labels(
    const std::vector<PredictionRecord>& predictions, const std::vector<NliExample>& gold,
    const std::vector<std::string>& label_order) {
  std::unordered_map<std::string, std::size_t> by_id;
  for (const PredictionRecord& r : predictions) {
    if (r.logits.size() != label_order.size())
      throw ValidationError("prediction " + r.example_id + " lacks logits of arity " +
                            std::to_string(label_order.size()));
    if (!by_id.emplace(r.example_id, argmax_label(r.logits)).second)
      throw ValidationError("multiple predictions for example " + r.example_id);
  }
  for (const NliExample& e : gold)
    if (!by_id.count(e.id)) throw ValidationError("missing prediction for example " + e.id);
  if (by_id.size() != gold.size())
    throw ValidationError("prediction file has " + std::to_string(by_id.size()) +
                          " examples, gold has " + std::to_string(gold.size()));
  return by_id;
}

std::size_t gold_label_index(const NliExample& e, const std::vector<std::string>& label_order) {
  const std::string name = to_string(e.label);
  const auto it = std::find(label_order.begin(), label_order.end(), name);
  if (it == label_order.end())
    throw ValidationError("gold label " + name + " not in the declared label order");
  return static_cast<std::size_t>(it - label_order.begin());
}

}  // namespace

double nli_accuracy(const std::vector<PredictionRecord>& predictions,
                    const std::vector<NliExample>& gold,
                    const std::vector<std::string>& label_order) {
  if (gold.empty()) throw ValidationError("empty gold dataset");
  const auto by_id = prediction_labels(predictions, gold, label_order);
  std::size_t correct = 0;
  for (const NliExample& e : gold)
    if (by_id.at(e.id) == gold_label_index(e, label_order)) ++correct;
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

std::string normalize_answer(const std::string& answer, const QaNormalizationOptions& options) {
  const utf8::Decoded d = utf8::decode(answer);
  std::string stripped;
  for (char32_t cp : d.code_points) {
    const bool punct =
        options.ascii_punctuation_only ? text::is_ascii_punct(cp) : text::is_punct(cp);
    if (punct) continue;
    stripped += utf8::encode(text::to_lower(cp));
  }
  std::string out;
  for (const std::string& tok : text::ws_tokens(stripped)) {
    if (options.remove_articles && (tok == "a" || tok == "an" || tok == "the")) continue;
    if (!out.empty()) out.push_back(' ');
    out += tok;
  }
  return out;
}

namespace {

QaScore score_one(const std::string& norm_pred, const std::string& norm_gold) {
  QaScore s;
  s.em = norm_pred == norm_gold ? 1.0 : 0.0;
  if (norm_pred.empty() || norm_gold.empty()) {
    s.f1 = (norm_pred.empty() && norm_gold.empty()) ? 1.0 : 0.0;
    return s;
  }
  const auto pred_tokens = text::ws_tokens(norm_pred);
  const auto gold_tokens = text::ws_tokens(norm_gold);
  std::unordered_map<std::string, std::size_t> gold_bag;
  for (const std::string& t : gold_tokens) ++gold_bag[t];
  std::size_t common = 0;
  for (const std::string& t : pred_tokens) {
    const auto it = gold_bag.find(t);
    if (it != gold_bag.end() && it->second > 0) {
      ++common;
      --it->second;
    }
  }
  if (common == 0) {
    s.f1 = 0.0;
    return s;
  }
  const double precision = static_cast<double>(common) / static_cast<double>(pred_tokens.size());
  const double recall = static_cast<double>(common) / static_cast<double>(gold_tokens.size());
  s.f1 = 2.0 * precision * recall / (precision + recall);
  return s;
}

}  // namespace

QaScore qa_scores(const std::string& predicted, const std::vector<std::string>& gold_answers,
                  const QaNormalizationOptions& options) {
  if (gold_answers.empty()) throw ValidationError("QA scoring needs at least one gold answer");
  const std::string norm_pred = normalize_answer(predicted, options);
  QaScore best;
  for (const std::string& gold : gold_answers) {
    const QaScore s = score_one(norm_pred, normalize_answer(gold, options));
    best.f1 = std::max(best.f1, s.f1);
    best.em = std::max(best.em, s.em);
  }
  return best;
}

GroupField group_field_from_string(const std::string& name) {
  if (name == "genre") return GroupField::genre;
  if (name == "language") return GroupField::language;
  if (name == "provenance") return GroupField::provenance;
  throw ValidationError("unknown group field \"" + name + "\"");
}

namespace {

std::string strip_split_marker(std::string group) {
  for (const char* suffix : {"_matched", "_mismatched"}) {
    const std::string s(suffix);
    if (group.size() > s.size() && group.ends_with(s))
      return group.substr(0, group.size() - s.size());
  }
  return group;
}

std::string group_value(const NliExample& e, GroupField field) {
  switch (field) {
    case GroupField::genre:
      if (!e.genre) throw ValidationError("example " + e.id + " lacks a genre group field");
      return strip_split_marker(*e.genre);
    case GroupField::language:
      return e.language;
    case GroupField::provenance:
      return to_string(e.provenance);
  }
  throw ValidationError("unknown group field");
}

}  // namespace

std::map<std::string, double> grouped_accuracy(const std::vector<PredictionRecord>& predictions,
                                               const std::vector<NliExample>& gold,
                                               GroupField group_field,
                                               const std::vector<std::string>& label_order) {
  if (gold.empty()) throw ValidationError("empty gold dataset");
  const auto by_id = prediction_labels(predictions, gold, label_order);
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_group;  // correct, total
  for (const NliExample& e : gold) {
    auto& [correct, total] = per_group[group_value(e, group_field)];
    ++total;
    if (by_id.at(e.id) == gold_label_index(e, label_order)) ++correct;
  }
  std::map<std::string, double> out;
  for (const auto& [group, counts] : per_group)
    out[group] = static_cast<double>(counts.first) / static_cast<double>(counts.second);
  return out;
}

void ResultTable::validate() const {
  std::vector<std::string> keys;
  for (const Row& row : rows) {
    if (row.values.size() != columns.size())
      throw ValidationError("row " + row.system + " has " + std::to_string(row.values.size()) +
                            " values for " + std::to_string(columns.size()) + " columns");
    for (double v : row.values)
      if (!std::isfinite(v)) throw ValidationError("non-finite value in row " + row.system);
    std::string key = row.system + "\x1f" + (row.seed ? std::to_string(*row.seed) : "") + "\x1f" +
                      (row.epoch ? std::to_string(*row.epoch) : "");
    keys.push_back(std::move(key));
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
    throw ValidationError("duplicate (system, seed, epoch) row key");
}

std::string ResultTable::to_json() const {
  ordered_json j;
  j["type"] = "result_table";
  j["columns"] = columns;
  j["rows"] = ordered_json::array();
  for (const Row& row : rows) {
    ordered_json jr;
    jr["system"] = row.system;
    if (row.seed) jr["seed"] = *row.seed;
    if (row.epoch) jr["epoch"] = *row.epoch;
    jr["values"] = row.values;
    j["rows"].push_back(std::move(jr));
  }
  return j.dump(2);
}

ResultTable ResultTable::from_json_file(const std::string& path) {
  ordered_json j = ordered_json::parse(read_file_bytes(path), nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("type", "") != "result_table")
    throw ValidationError(path + ": not a result_table JSON file");
  ResultTable table;
  table.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& jr : j.at("rows")) {
    Row row;
    row.system = jr.at("system").get<std::string>();
    if (jr.contains("seed")) row.seed = jr.at("seed").get<int>();
    if (jr.contains("epoch")) row.epoch = jr.at("epoch").get<int>();
    row.values = jr.at("values").get<std::vector<double>>();
    table.rows.push_back(std::move(row));
  }
  table.validate();
  return table;
}

std::pair<ResultTable, ResultTable> aggregate_runs(const std::vector<ResultTable>& tables) {
  if (tables.empty()) throw ValidationError("no tables to aggregate");
  const ResultTable& first = tables.front();
  for (const ResultTable& t : tables) {
    t.validate();
    if (t.columns != first.columns)
      throw ValidationError("aggregated tables disagree on columns");
    if (t.rows.size() != first.rows.size())
      throw ValidationError("aggregated tables disagree on row count");
    for (std::size_t r = 0; r < t.rows.size(); ++r)
      if (t.rows[r].system != first.rows[r].system || t.rows[r].epoch != first.rows[r].epoch)
        throw ValidationError("aggregated tables disagree on row " + std::to_string(r));
  }
  ResultTable mean, stddev;
  mean.columns = stddev.columns = first.columns;
  const double n = static_cast<double>(tables.size());
  for (std::size_t r = 0; r < first.rows.size(); ++r) {
    ResultTable::Row mean_row, std_row;
    mean_row.system = std_row.system = first.rows[r].system;
    mean_row.epoch = std_row.epoch = first.rows[r].epoch;
    for (std::size_t c = 0; c < first.columns.size(); ++c) {
      double sum = 0.0;
      for (const ResultTable& t : tables) sum += t.rows[r].values[c];
      const double m = sum / n;
      double sq = 0.0;
      for (const ResultTable& t : tables) {
        const double d = t.rows[r].values[c] - m;
        sq += d * d;
      }
      mean_row.values.push_back(m);
      std_row.values.push_back(std::sqrt(sq / n));  // population convention
    }
    mean.rows.push_back(std::move(mean_row));
    stddev.rows.push_back(std::move(std_row));
  }
  return {std::move(mean), std::move(stddev)};
}

int select_best_checkpoint(const std::map<int, std::vector<double>>& dev_results) {
  if (dev_results.empty()) throw ValidationError("no epochs to select from");
  int best_epoch = dev_results.begin()->first;
  double best_avg = -1.0;
  for (const auto& [epoch, accs] : dev_results) {
    if (accs.empty()) throw ValidationError("epoch " + std::to_string(epoch) + " has no results");
    double sum = 0.0;
    for (double a : accs) sum += a;
    const double avg = sum / static_cast<double>(accs.size());
    if (avg > best_avg) {  // strictly greater: ties keep the earliest epoch
      best_avg = avg;
      best_epoch = epoch;
    }
  }
  return best_epoch;
}

}  // namespace artifact
