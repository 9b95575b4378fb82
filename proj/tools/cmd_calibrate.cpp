#include <iostream>
#include <map>
#include <memory>

#include "CLI11.hpp"
#include "json.hpp"

#include "artifact/calibrate.hpp"
#include "artifact/error.hpp"
#include "cli_util.hpp"

namespace artifact::cli {

namespace {

struct CalibrateArgs {
  std::string target_spec;
  std::string target_from;
  std::string fit_path;
  std::string apply_path;
  std::string out;
  std::string report_path;
  std::string labels = "entailment,neutral,contradiction";
  double tolerance = 0.005;
  int max_sweeps = 50;
};

std::map<int, std::vector<std::vector<double>>> logits_by_seed(
    const std::vector<PredictionRecord>& records) {
  std::map<int, std::vector<std::vector<double>>> by_seed;
  for (const PredictionRecord& r : records) {
    if (r.logits.empty())
      throw ValidationError("prediction " + r.example_id + " carries no logits");
    by_seed[r.seed].push_back(r.logits);
  }
  return by_seed;
}

void run(const CalibrateArgs& args) {
  RunScope scope("calibrate");
  const auto label_order = parse_labels(args.labels);
  scope.config("labels", args.labels);
  scope.config("tolerance", std::to_string(args.tolerance));
  scope.config("max-sweeps", std::to_string(args.max_sweeps));

  ClassDistribution target;
  if (!args.target_from.empty()) {
    scope.input(args.target_from);
    scope.config("target-from", args.target_from);
    const auto gold = load_nli_dataset(args.target_from);
    if (gold.empty()) throw ValidationError("--target-from dataset is empty");
    std::vector<double> counts(label_order.size(), 0.0);
    for (const NliExample& e : gold) {
      const auto it = std::find(label_order.begin(), label_order.end(), to_string(e.label));
      if (it == label_order.end())
        throw ValidationError("gold label outside the declared order: " + to_string(e.label));
      counts[static_cast<std::size_t>(it - label_order.begin())] += 1.0;
    }
    target.labels = label_order;
    for (double c : counts) target.probabilities.push_back(c / static_cast<double>(gold.size()));
  } else if (!args.target_spec.empty()) {
    scope.config("target", args.target_spec);
    target = parse_target(args.target_spec, label_order);
  } else {
    throw ValidationError("calibrate needs --target or --target-from");
  }

  scope.input(args.fit_path);
  const auto fit_records = load_predictions(args.fit_path, label_order);
  if (fit_records.empty()) throw ValidationError(args.fit_path + " contains no predictions");
  CalibrationConfig config;
  config.target = target;
  config.tolerance = args.tolerance;
  config.max_sweeps = args.max_sweeps;

  // One bias per seed: each run is its own decision rule.
  nlohmann::ordered_json report;
  report["type"] = "calibration";
  report["label_order"] = label_order;
  report["target"] = target.probabilities;
  report["per_seed"] = nlohmann::ordered_json::array();
  std::map<int, BiasVector> bias_by_seed;
  for (const auto& [seed, logits] : logits_by_seed(fit_records)) {
    const CalibrationResult result = calibrate(logits, label_order, config);
    bias_by_seed[seed] = result.bias;
    nlohmann::ordered_json jr;
    jr["seed"] = seed;
    jr["bias"] = result.bias.values;
    jr["achieved"] = result.achieved.probabilities;
    jr["support"] = result.achieved.support;
    jr["sweeps_used"] = result.sweeps_used;
    jr["converged"] = result.converged;
    report["per_seed"].push_back(std::move(jr));
  }

  std::string primary = args.report_path;
  if (!args.apply_path.empty()) {
    if (args.out.empty()) throw ValidationError("--apply needs --out for the adjusted records");
    scope.input(args.apply_path);
    scope.config("apply", args.apply_path);
    auto apply_records = load_predictions(args.apply_path, label_order);
    for (PredictionRecord& r : apply_records) {
      const auto it = bias_by_seed.find(r.seed);
      if (it == bias_by_seed.end())
        throw ValidationError("no fitted bias for seed " + std::to_string(r.seed));
      for (std::size_t c = 0; c < r.logits.size(); ++c) r.logits[c] += it->second.values[c];
    }
    write_predictions(apply_records, args.out);
    scope.output(args.out);
    primary = args.out;
  }

  if (!args.report_path.empty()) {
    atomic_write_file(args.report_path, report.dump(2) + "\n");
    scope.output(args.report_path);
  } else {
    std::cout << report.dump(2) << "\n";
  }
  if (!primary.empty()) scope.finish(primary);
}

}  // namespace

void register_cmd_calibrate(CLI::App& app, const GlobalOptions&) {
  auto args = std::make_shared<CalibrateArgs>();
  CLI::App* cmd = app.add_subcommand(
      "calibrate", "Fit per-class logit biases so predictions match a target distribution");
  cmd->add_option("--target", args->target_spec,
                  "Target distribution, e.g. entailment=0.33,neutral=0.33,contradiction=0.34 "
                  "or uniform");
  cmd->add_option("--target-from", args->target_from,
                  "Take the target from a gold dataset's label distribution");
  cmd->add_option("--fit", args->fit_path, "Predictions to fit the bias on")->required();
  cmd->add_option("--apply", args->apply_path, "Predictions to re-score with the fitted bias");
  cmd->add_option("--out", args->out, "Adjusted predictions output (with --apply)");
  cmd->add_option("--report", args->report_path, "Calibration report JSON (default: stdout)");
  cmd->add_option("--labels", args->labels, "Declared label order")->capture_default_str();
  cmd->add_option("--tolerance", args->tolerance, "Per-class absolute proportion tolerance")
      ->capture_default_str();
  cmd->add_option("--max-sweeps", args->max_sweeps, "Sweep budget")->capture_default_str();
  cmd->callback([args]() { run(*args); });
}

}  // namespace artifact::cli
