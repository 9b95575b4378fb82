#include <algorithm>
#include <iostream>
#include <map>
#include <memory>
#include <unordered_map>

#include "CLI11.hpp"
#include "json.hpp"

#include "artifact/error.hpp"
#include "artifact/eval.hpp"
#include "cli_util.hpp"

namespace artifact::cli {

namespace {

void emit_table(RunScope& scope, const std::string& json, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << json << "\n";
    return;
  }
  atomic_write_file(out_path, json + "\n");
  scope.output(out_path);
  scope.finish(out_path);
}

struct EvalNliArgs {
  std::string gold, preds;
  std::string group_by;
  std::string labels = "entailment,neutral,contradiction";
  std::string system = "system";
  std::string out;
  bool per_language = false;
};

void run_nli(EvalNliArgs args) {
  if (args.per_language) {
    if (!args.group_by.empty() && args.group_by != "language")
      throw ValidationError("--per-language conflicts with --group-by " + args.group_by);
    args.group_by = "language";
  }
  RunScope scope("eval nli");
  scope.input(args.gold);
  scope.input(args.preds);
  scope.config_if("group-by", args.group_by);
  scope.config("labels", args.labels);
  const auto label_order = parse_labels(args.labels);
  const auto gold = load_nli_dataset(args.gold);
  const auto predictions = load_predictions(args.preds, label_order);
  if (predictions.empty()) throw ValidationError(args.preds + " contains no predictions");

  std::map<int, std::vector<PredictionRecord>> by_seed;
  for (const PredictionRecord& r : predictions) by_seed[r.seed].push_back(r);

  ResultTable table;
  table.columns = {"overall"};
  if (!args.group_by.empty()) {
    const GroupField field = group_field_from_string(args.group_by);
    // Group columns from the gold data, sorted.
    std::map<std::string, double> probe =
        grouped_accuracy(by_seed.begin()->second, gold, field, label_order);
    for (const auto& [group, _] : probe) table.columns.push_back(group);
    for (const auto& [seed, records] : by_seed) {
      ResultTable::Row row;
      row.system = args.system;
      row.seed = seed;
      row.values.push_back(nli_accuracy(records, gold, label_order));
      const auto per_group = grouped_accuracy(records, gold, field, label_order);
      for (std::size_t c = 1; c < table.columns.size(); ++c)
        row.values.push_back(per_group.at(table.columns[c]));
      table.rows.push_back(std::move(row));
    }
  } else {
    for (const auto& [seed, records] : by_seed) {
      ResultTable::Row row;
      row.system = args.system;
      row.seed = seed;
      row.values.push_back(nli_accuracy(records, gold, label_order));
      table.rows.push_back(std::move(row));
    }
  }
  table.validate();
  emit_table(scope, table.to_json(), args.out);
}

struct EvalQaArgs {
  std::string gold, preds;
  std::string system = "system";
  std::string out;
  bool ascii_punct = false;
  bool keep_articles = false;
};

void run_qa(const EvalQaArgs& args) {
  RunScope scope("eval qa");
  scope.input(args.gold);
  scope.input(args.preds);
  const auto gold = load_qa_dataset(args.gold);
  const auto predictions = load_predictions(args.preds, default_nli_labels());
  if (predictions.empty()) throw ValidationError(args.preds + " contains no predictions");
  QaNormalizationOptions norm;
  norm.ascii_punctuation_only = args.ascii_punct;
  norm.remove_articles = !args.keep_articles;
  scope.config("ascii-punct", args.ascii_punct ? "1" : "0");
  scope.config("remove-articles", norm.remove_articles ? "1" : "0");

  std::unordered_map<std::string, const QaExample*> gold_by_id;
  for (const QaExample& e : gold) gold_by_id[e.id] = &e;

  std::map<int, std::pair<double, double>> sums;  // seed -> (f1 sum, em sum)
  std::map<int, std::size_t> counts;
  for (const PredictionRecord& r : predictions) {
    if (!r.answer) throw ValidationError("prediction " + r.example_id + " carries no answer");
    const auto it = gold_by_id.find(r.example_id);
    if (it == gold_by_id.end())
      throw ValidationError("prediction for unknown example " + r.example_id);
    std::vector<std::string> gold_texts;
    for (const QaAnswer& a : it->second->answers) gold_texts.push_back(a.text);
    const QaScore s = qa_scores(r.answer->text, gold_texts, norm);
    sums[r.seed].first += s.f1;
    sums[r.seed].second += s.em;
    ++counts[r.seed];
  }
  for (const auto& [seed, n] : counts)
    if (n != gold.size())
      throw ValidationError("seed " + std::to_string(seed) + " covers " + std::to_string(n) +
                            " of " + std::to_string(gold.size()) + " gold examples");

  ResultTable table;
  table.columns = {"f1", "em"};
  for (const auto& [seed, sum] : sums) {
    ResultTable::Row row;
    row.system = args.system;
    row.seed = seed;
    const double n = static_cast<double>(counts[seed]);
    row.values = {sum.first / n, sum.second / n};
    table.rows.push_back(std::move(row));
  }
  table.validate();
  emit_table(scope, table.to_json(), args.out);
}

struct AggregateArgs {
  std::vector<std::string> tables;
  std::string out;
};

void run_aggregate(const AggregateArgs& args) {
  RunScope scope("eval aggregate");
  std::vector<ResultTable> tables;
  for (const std::string& path : args.tables) {
    scope.input(path);
    tables.push_back(ResultTable::from_json_file(path));
  }
  const auto [mean, stddev] = aggregate_runs(tables);
  nlohmann::ordered_json j;
  j["type"] = "aggregate";
  j["runs"] = tables.size();
  j["mean"] = nlohmann::ordered_json::parse(mean.to_json());
  j["std"] = nlohmann::ordered_json::parse(stddev.to_json());
  emit_table(scope, j.dump(2), args.out);
}

struct BestEpochArgs {
  std::string table;
  std::string out;
};

void run_best_epoch(const BestEpochArgs& args) {
  RunScope scope("eval best-epoch");
  scope.input(args.table);
  const ResultTable table = ResultTable::from_json_file(args.table);
  std::map<int, std::vector<double>> per_epoch;
  for (const ResultTable::Row& row : table.rows) {
    if (!row.epoch) throw ValidationError("best-epoch needs rows keyed by epoch");
    auto& accs = per_epoch[*row.epoch];
    accs.insert(accs.end(), row.values.begin(), row.values.end());
  }
  const int best = select_best_checkpoint(per_epoch);
  double sum = 0.0;
  for (double v : per_epoch[best]) sum += v;
  nlohmann::ordered_json j;
  j["type"] = "best_epoch";
  j["epoch"] = best;
  j["average"] = sum / static_cast<double>(per_epoch[best].size());
  emit_table(scope, j.dump(2), args.out);
}

}  // namespace

void register_cmd_eval(CLI::App& app, const GlobalOptions&) {
  CLI::App* cmd = app.add_subcommand("eval", "Metric computation and run aggregation");
  cmd->require_subcommand(1);

  auto nli_args = std::make_shared<EvalNliArgs>();
  CLI::App* nli = cmd->add_subcommand("nli", "Label accuracy against gold");
  nli->add_option("--gold", nli_args->gold, "Gold NLI dataset")->required();
  nli->add_option("--preds", nli_args->preds, "Predictions (JSON Lines)")->required();
  nli->add_option("--group-by", nli_args->group_by, "genre | language | provenance");
  nli->add_flag("--per-language", nli_args->per_language, "Shorthand for --group-by language");
  nli->add_option("--labels", nli_args->labels, "Declared label order")->capture_default_str();
  nli->add_option("--system", nli_args->system, "System name for the table rows")
      ->capture_default_str();
  nli->add_option("--out", nli_args->out, "Result table JSON (default: stdout)");
  nli->callback([nli_args]() { run_nli(*nli_args); });

  auto qa_args = std::make_shared<EvalQaArgs>();
  CLI::App* qa = cmd->add_subcommand("qa", "F1 and exact match with answer normalization");
  qa->add_option("--gold", qa_args->gold, "Gold QA dataset")->required();
  qa->add_option("--preds", qa_args->preds, "Predictions with answer records")->required();
  qa->add_flag("--ascii-punct", qa_args->ascii_punct,
               "Restrict punctuation stripping to the ASCII set");
  qa->add_flag("--keep-articles", qa_args->keep_articles,
               "Skip English article removal (non-English evaluation)");
  qa->add_option("--system", qa_args->system, "System name for the table rows")
      ->capture_default_str();
  qa->add_option("--out", qa_args->out, "Result table JSON (default: stdout)");
  qa->callback([qa_args]() { run_qa(*qa_args); });

  auto agg_args = std::make_shared<AggregateArgs>();
  CLI::App* agg = cmd->add_subcommand("aggregate", "Mean and std across per-seed tables");
  agg->add_option("tables", agg_args->tables, "Result table JSON files")->required();
  agg->add_option("--out", agg_args->out, "Aggregate JSON (default: stdout)");
  agg->callback([agg_args]() { run_aggregate(*agg_args); });

  auto best_args = std::make_shared<BestEpochArgs>();
  CLI::App* best = cmd->add_subcommand("best-epoch", "Pick the epoch with the best average");
  best->add_option("--table", best_args->table, "Result table with epoch-keyed rows")->required();
  best->add_option("--out", best_args->out, "Output JSON (default: stdout)");
  best->callback([best_args]() { run_best_epoch(*best_args); });
}

}  // namespace artifact::cli
