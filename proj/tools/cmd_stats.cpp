#include <iostream>
#include <memory>
#include <unordered_map>

#include "CLI11.hpp"

#include "artifact/error.hpp"
#include "artifact/stats.hpp"
#include "artifact/text.hpp"
#include "cli_util.hpp"

namespace artifact::cli {

namespace {

void emit_report(RunScope& scope, const std::string& json, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << json << "\n";
    return;
  }
  atomic_write_file(out_path, json + "\n");
  scope.output(out_path);
  scope.finish(out_path);
}

struct OverlapArgs {
  std::vector<std::string> datasets;
  std::string out;
  bool whitespace_tokens = false;
};

void run_overlap(const OverlapArgs& args) {
  RunScope scope("stats overlap");
  std::vector<std::pair<std::string, std::vector<NliExample>>> named;
  for (const std::string& spec : args.datasets) {
    const auto [name, path] = parse_named_path(spec);
    scope.input(path);
    scope.config("dataset." + name, path);
    named.emplace_back(name, load_nli_dataset(path));
  }
  if (named.empty()) throw ValidationError("stats overlap needs --dataset name=path entries");
  const auto report = overlap_report(
      named, args.whitespace_tokens ? TokenizerKind::whitespace : TokenizerKind::word);
  emit_report(scope, report.to_json(), args.out);
}

struct ClassesArgs {
  std::string preds;
  std::string gold;
  std::string group_by = "language";
  std::string labels = "entailment,neutral,contradiction";
  std::string bias;
  std::string out;
};

void run_classes(const ClassesArgs& args) {
  RunScope scope("stats classes");
  scope.input(args.preds);
  scope.config("labels", args.labels);
  scope.config_if("bias", args.bias);
  const auto label_order = parse_labels(args.labels);
  const auto predictions = load_predictions(args.preds, label_order);
  BiasVector bias;
  if (!args.bias.empty()) {
    for (const std::string& v : text::split(args.bias, ','))
      bias.values.push_back(std::stod(v));
  }
  const BiasVector* bias_ptr = args.bias.empty() ? nullptr : &bias;
  std::vector<std::pair<std::string, ClassDistribution>> groups;
  groups.emplace_back("all", class_distribution(predictions, label_order, bias_ptr));
  if (!args.gold.empty()) {
    scope.input(args.gold);
    scope.config("group-by", args.group_by);
    const auto gold = load_nli_dataset(args.gold);
    std::unordered_map<std::string, std::string> group_of;
    for (const NliExample& e : gold) {
      if (args.group_by == "language")
        group_of[e.id] = e.language;
      else if (args.group_by == "provenance")
        group_of[e.id] = to_string(e.provenance);
      else if (args.group_by == "genre")
        group_of[e.id] = e.genre.value_or("");
      else
        throw ValidationError("unknown --group-by \"" + args.group_by + "\"");
    }
    std::map<std::string, std::vector<PredictionRecord>> by_group;
    for (const PredictionRecord& r : predictions) {
      const auto it = group_of.find(r.example_id);
      if (it == group_of.end())
        throw ValidationError("prediction " + r.example_id + " has no gold record");
      by_group[it->second].push_back(r);
    }
    for (const auto& [group, records] : by_group)
      groups.emplace_back(group, class_distribution(records, label_order, bias_ptr));
  }
  emit_report(scope, class_distribution_to_json(groups, label_order), args.out);
}

struct LengthsArgs {
  std::string dataset;
  std::string out;
  bool whitespace_tokens = false;
};

void run_lengths(const LengthsArgs& args) {
  RunScope scope("stats lengths");
  scope.input(args.dataset);
  const auto dataset = load_nli_dataset(args.dataset);
  const auto stats = length_stats(
      dataset, args.whitespace_tokens ? TokenizerKind::whitespace : TokenizerKind::word);
  emit_report(scope, stats.to_json(), args.out);
}

}  // namespace

void register_cmd_stats(CLI::App& app, const GlobalOptions&) {
  CLI::App* cmd = app.add_subcommand("stats", "Artifact diagnostics over datasets and predictions");
  cmd->require_subcommand(1);

  auto overlap_args = std::make_shared<OverlapArgs>();
  CLI::App* overlap =
      cmd->add_subcommand("overlap", "Premise-hypothesis lexical overlap by label cell");
  overlap->add_option("--dataset", overlap_args->datasets, "name=path, repeatable")->required();
  overlap->add_option("--out", overlap_args->out, "Report JSON path (default: stdout)");
  overlap->add_flag("--whitespace-tokens", overlap_args->whitespace_tokens,
                    "Use plain whitespace tokenization");
  overlap->callback([overlap_args]() { run_overlap(*overlap_args); });

  auto classes_args = std::make_shared<ClassesArgs>();
  CLI::App* classes = cmd->add_subcommand("classes", "Predicted class distributions");
  classes->add_option("--preds", classes_args->preds, "Prediction file (JSON Lines)")->required();
  classes->add_option("--gold", classes_args->gold, "Gold dataset enabling per-group splits");
  classes->add_option("--group-by", classes_args->group_by, "language | provenance | genre")
      ->capture_default_str();
  classes->add_option("--labels", classes_args->labels, "Declared label order")
      ->capture_default_str();
  classes->add_option("--bias", classes_args->bias,
                      "Comma-separated per-class logit offsets applied before the argmax");
  classes->add_option("--out", classes_args->out, "Report JSON path (default: stdout)");
  classes->callback([classes_args]() { run_classes(*classes_args); });

  auto lengths_args = std::make_shared<LengthsArgs>();
  CLI::App* lengths = cmd->add_subcommand("lengths", "Token length statistics by label cell");
  lengths->add_option("--dataset", lengths_args->dataset, "NLI dataset path")->required();
  lengths->add_option("--out", lengths_args->out, "Report JSON path (default: stdout)");
  lengths->add_flag("--whitespace-tokens", lengths_args->whitespace_tokens,
                    "Use plain whitespace tokenization");
  lengths->callback([lengths_args]() { run_lengths(*lengths_args); });
}

}  // namespace artifact::cli
