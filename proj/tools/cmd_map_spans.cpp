#include <iostream>
#include <memory>

#include "CLI11.hpp"

#include "artifact/error.hpp"
#include "artifact/span_map.hpp"
#include "cli_util.hpp"

namespace artifact::cli {

namespace {

struct MapSpansArgs {
  std::string mode = "discard";
  std::string alignments;
  std::string translated_contexts;
  std::string translated_questions;
  std::string language;
  std::string provenance = "machine_translated";
  std::string input, output;
  std::string report_path;
};

void run(const MapSpansArgs& args) {
  RunScope scope("map-spans");
  scope.config("mode", args.mode);
  scope.config("alignments", args.alignments);
  scope.config("translated", args.translated_contexts);
  scope.config_if("translated-questions", args.translated_questions);
  scope.config_if("language", args.language);
  scope.config("provenance", args.provenance);
  scope.input(args.input);
  scope.input(args.alignments);
  scope.input(args.translated_contexts);

  SpanMapOptions options;
  if (args.mode == "discard")
    options.mode = SpanMapMode::discard;
  else if (args.mode == "fallback" || args.mode == "fallback-source-answer")
    options.mode = SpanMapMode::fallback_source_answer;
  else
    throw ValidationError("unknown --mode \"" + args.mode + "\"");
  options.output_language = args.language;
  options.output_provenance = provenance_from_string(args.provenance);
  if (!args.translated_questions.empty()) {
    scope.input(args.translated_questions);
    options.translated_questions = load_lines(args.translated_questions);
  }

  const auto dataset = load_qa_dataset(args.input);
  const auto contexts = load_lines(args.translated_contexts);
  const auto alignments = load_pharaoh(args.alignments);
  const auto [mapped, report] = map_dataset(dataset, contexts, alignments, options);
  write_qa_dataset(mapped, args.output);
  scope.output(args.output);
  if (!args.report_path.empty()) {
    atomic_write_file(args.report_path, report.to_json() + "\n");
    scope.output(args.report_path);
  } else {
    std::cout << report.to_json() << "\n";
  }
  scope.finish(args.output);
}

}  // namespace

void register_cmd_map_spans(CLI::App& app, const GlobalOptions&) {
  auto args = std::make_shared<MapSpansArgs>();
  CLI::App* cmd = app.add_subcommand(
      "map-spans", "Project QA answer spans onto translated contexts via word alignments");
  cmd->add_option("--mode", args->mode, "discard | fallback")->capture_default_str();
  cmd->add_option("--alignments", args->alignments,
                  "Pharaoh alignments from source to translated context tokens")
      ->required();
  cmd->add_option("--translated", args->translated_contexts,
                  "Translated contexts, one per example")
      ->required();
  cmd->add_option("--translated-questions", args->translated_questions,
                  "Optional translated questions, one per example");
  cmd->add_option("--language", args->language, "Language stamped on the output");
  cmd->add_option("--provenance", args->provenance, "Provenance stamped on the output")
      ->capture_default_str();
  cmd->add_option("--report", args->report_path, "Span map report JSON (default: stdout)");
  cmd->add_option("input", args->input, "Source QA dataset (JSON Lines)")->required();
  cmd->add_option("output", args->output, "Projected QA dataset")->required();
  cmd->callback([args]() { run(*args); });
}

}  // namespace artifact::cli
