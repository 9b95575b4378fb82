#include <iostream>
#include <memory>

#include "CLI11.hpp"

#include "artifact/error.hpp"
#include "artifact/filter.hpp"
#include "cli_util.hpp"

namespace artifact::cli {

namespace {

struct FilterArgs {
  std::string src, tgt, tsv;
  std::string out_src, out_tgt;
  std::string report_path;
  std::string langid_model;
  FilterConfig config;
  // langid training mode
  std::string train_langid_out;
  std::vector<std::string> corpora;
  LangIdConfig langid_config;
};

void run_train_langid(const FilterArgs& args) {
  RunScope scope("filter --train-langid");
  std::map<std::string, std::vector<std::string>> corpus;
  for (const std::string& spec : args.corpora) {
    const auto [lang, path] = parse_named_path(spec);
    scope.input(path);
    auto texts = load_lines(path);
    auto& bucket = corpus[lang];
    bucket.insert(bucket.end(), texts.begin(), texts.end());
    scope.config("corpus." + lang, path);
  }
  if (corpus.empty()) throw ValidationError("--train-langid needs --corpus lang=path entries");
  scope.config("vocab-size", std::to_string(args.langid_config.vocab_size));
  scope.config("alpha", std::to_string(args.langid_config.alpha));
  const LangIdModel model = train_langid(corpus, args.langid_config);
  model.save(args.train_langid_out);
  scope.output(args.train_langid_out);
  scope.finish(args.train_langid_out);
  std::cerr << "trained langid model over " << model.languages().size() << " languages, "
            << model.vocab().size() << " n-grams\n";
}

void run_filter(const FilterArgs& args) {
  RunScope scope("filter");
  if (args.out_src.empty() || args.out_tgt.empty())
    throw ValidationError("filter needs --out-src and --out-tgt");
  scope.config_if("src", args.src);
  scope.config_if("tgt", args.tgt);
  scope.config_if("tsv", args.tsv);
  scope.config("max-tokens", std::to_string(args.config.max_tokens));
  scope.config("max-ratio", std::to_string(args.config.max_ratio));
  scope.config_if("src-lang", args.config.expected_source_lang);
  scope.config_if("tgt-lang", args.config.expected_target_lang);
  scope.config_if("langid-model", args.langid_model);
  if (!args.src.empty()) scope.input(args.src);
  if (!args.tgt.empty()) scope.input(args.tgt);
  if (!args.tsv.empty()) scope.input(args.tsv);

  std::unique_ptr<LangIdModel> model;
  if (!args.langid_model.empty()) {
    scope.input(args.langid_model);
    model = std::make_unique<LangIdModel>(LangIdModel::load(args.langid_model));
  }

  const auto pairs = load_bitext(args.src, args.tgt, args.tsv);
  std::vector<std::string> kept_src, kept_tgt;
  const FilterReport report =
      filter_corpus(pairs, model.get(), args.config, [&](const BitextPair& p) {
        kept_src.push_back(p.source);
        kept_tgt.push_back(p.target);
      });
  write_lines(kept_src, args.out_src);
  write_lines(kept_tgt, args.out_tgt);
  scope.output(args.out_src);
  scope.output(args.out_tgt);
  if (!args.report_path.empty()) {
    atomic_write_file(args.report_path, report.to_json() + "\n");
    scope.output(args.report_path);
  } else {
    std::cout << report.to_json() << "\n";
  }
  scope.finish(args.out_src);
}

}  // namespace

void register_cmd_filter(CLI::App& app, const GlobalOptions&) {
  auto args = std::make_shared<FilterArgs>();
  CLI::App* cmd = app.add_subcommand(
      "filter", "Filter a parallel corpus by length, length ratio and language id");
  cmd->add_option("--src", args->src, "Source-side text file, one sentence per line");
  cmd->add_option("--tgt", args->tgt, "Target-side text file");
  cmd->add_option("--tsv", args->tsv, "Alternative: single TSV with src<TAB>tgt");
  cmd->add_option("--out-src", args->out_src, "Kept source sentences");
  cmd->add_option("--out-tgt", args->out_tgt, "Kept target sentences");
  cmd->add_option("--report", args->report_path, "Filter report JSON (default: stdout)");
  cmd->add_option("--max-tokens", args->config.max_tokens, "Maximum tokens per side")
      ->capture_default_str();
  cmd->add_option("--max-ratio", args->config.max_ratio, "Maximum max/min token ratio")
      ->capture_default_str();
  cmd->add_option("--src-lang", args->config.expected_source_lang, "Expected source language");
  cmd->add_option("--tgt-lang", args->config.expected_target_lang, "Expected target language");
  cmd->add_option("--langid-model", args->langid_model,
                  "Language id model; without it the language rules are skipped");
  cmd->add_option("--langid-min-confidence", args->config.langid_min_confidence,
                  "Additionally require this posterior confidence")
      ->capture_default_str();
  cmd->add_option("--train-langid", args->train_langid_out,
                  "Train a language id model instead of filtering; writes the model here");
  cmd->add_option("--corpus", args->corpora, "lang=path training corpora for --train-langid");
  cmd->add_option("--langid-vocab", args->langid_config.vocab_size,
                  "Retained n-grams when training")
      ->capture_default_str();
  cmd->add_option("--langid-alpha", args->langid_config.alpha, "Add-alpha smoothing constant")
      ->capture_default_str();
  cmd->callback([args]() {
    if (!args->train_langid_out.empty())
      run_train_langid(*args);
    else
      run_filter(*args);
  });
}

}  // namespace artifact::cli
