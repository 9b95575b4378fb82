#include <iostream>
#include <memory>

#include "CLI11.hpp"

#include "artifact/error.hpp"
#include "artifact/tokenizer.hpp"
#include "artifact/translation.hpp"
#include "artifact/variant.hpp"
#include "cli_util.hpp"

namespace artifact::cli {

namespace {

struct VariantArgs {
  std::string task = "nli";
  std::string spec;
  std::string backend_spec;
  std::string cache_path;
  std::string base_lang;
  std::string input, output;
  std::size_t batch_size = 64;
  std::vector<std::string> decoding_metadata;  // recorded verbatim
};

std::string space_joined_tokens(const std::string& s, const std::string& language) {
  const TokenizedText t = tokenize(s, language);
  std::string out;
  for (std::size_t i = 0; i < t.tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += t.tokens[i].surface;
  }
  return out;
}

void run_build(const VariantArgs& args) {
  RunScope scope("variant build");
  scope.config("task", args.task);
  scope.config("spec", args.spec);
  scope.config("backend", args.backend_spec);
  scope.config("batch-size", std::to_string(args.batch_size));
  for (const std::string& kv : args.decoding_metadata) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw ValidationError("--decoding expects key=value, got \"" + kv + "\"");
    scope.config("decoding." + kv.substr(0, eq), kv.substr(eq + 1));
  }
  const std::string cache_path = resolve_cache_path(args.cache_path);
  scope.config_if("cache", cache_path);
  scope.input(args.input);

  auto backend = make_backend(args.backend_spec);
  TranslationCache cache =
      cache_path.empty() ? TranslationCache() : TranslationCache::open(cache_path);

  if (task_from_string(args.task) == Task::nli) {
    const auto dataset = load_nli_dataset(args.input);
    const std::string base =
        !args.base_lang.empty() ? args.base_lang
                                : (dataset.empty() ? "en" : dataset.front().language);
    const PipelineSpec spec = parse_pipeline_spec(args.spec, base);
    const auto variant = build_nli_variant(dataset, spec, *backend, cache, args.batch_size);
    write_nli_dataset(variant, args.output);
    scope.output(args.output);
    scope.finish(args.output);
    return;
  }

  // QA: emit translated context/question sidecars plus tokenized views
  // ready for alignment; span projection rebuilds the dataset.
  const auto dataset = load_qa_dataset(args.input);
  const std::string base = !args.base_lang.empty()
                               ? args.base_lang
                               : (dataset.empty() ? "en" : dataset.front().language);
  const PipelineSpec spec = parse_pipeline_spec(args.spec, base);
  const auto texts = build_qa_variant_texts(dataset, spec, *backend, cache, args.batch_size);
  const std::string prefix = args.output;
  std::vector<std::string> src_ctx_tok, tgt_ctx_tok;
  for (const QaExample& e : dataset)
    src_ctx_tok.push_back(space_joined_tokens(e.context, e.language));
  for (const std::string& ctx : texts.contexts)
    tgt_ctx_tok.push_back(space_joined_tokens(ctx, spec.output_language()));
  write_lines(texts.contexts, prefix + ".contexts.txt");
  write_lines(texts.questions, prefix + ".questions.txt");
  write_lines(src_ctx_tok, prefix + ".src_contexts.tok.txt");
  write_lines(tgt_ctx_tok, prefix + ".contexts.tok.txt");
  for (const char* suffix :
       {".contexts.txt", ".questions.txt", ".src_contexts.tok.txt", ".contexts.tok.txt"})
    scope.output(prefix + suffix);
  scope.finish(prefix + ".contexts.txt");
}

void run_selfcheck(const std::string& backend_spec, const std::string& src_lang,
                   const std::string& tgt_lang) {
  auto backend = make_backend(backend_spec);
  const SelfcheckReport report = backend_selfcheck(*backend, {src_lang, tgt_lang});
  std::cout << report.to_json() << "\n";
  if (!report.ok()) throw BackendError("backend selfcheck failed");
}

}  // namespace

void register_cmd_variant(CLI::App& app, const GlobalOptions&) {
  CLI::App* cmd = app.add_subcommand("variant", "Build translated training variants");
  cmd->require_subcommand(1);

  auto args = std::make_shared<VariantArgs>();
  CLI::App* build = cmd->add_subcommand("build", "Translate a dataset along a pipeline spec");
  build->add_option("--task", args->task, "nli or qa")->capture_default_str();
  build->add_option("--spec", args->spec, "Pipeline: MT-XX, BT-XX or explicit en>fi,fi>en steps")
      ->required();
  build->add_option("--backend", args->backend_spec,
                    "echo | reverse-words | perturb[:f[:seed]] | cmd:... | table:path")
      ->required();
  build->add_option("--cache", args->cache_path,
                    "Translation cache journal (ARTIFACT_CACHE_DIR resolves relative paths)");
  build->add_option("--base-lang", args->base_lang,
                    "Pipeline start language; defaults to the dataset's language");
  build->add_option("--batch-size", args->batch_size, "Backend batch size")->capture_default_str();
  build->add_option("--decoding", args->decoding_metadata,
                    "Backend decoding metadata recorded in the manifest, e.g. temperature=0.5");
  build->add_option("input", args->input, "Input dataset (JSON Lines)")->required();
  build->add_option("output", args->output,
                    "Output dataset (nli) or sidecar file prefix (qa)")
      ->required();
  build->callback([args]() { run_build(*args); });

  auto check_backend = std::make_shared<std::string>();
  auto check_src = std::make_shared<std::string>("en");
  auto check_tgt = std::make_shared<std::string>("fi");
  CLI::App* selfcheck = cmd->add_subcommand("selfcheck", "Probe a backend with a canary batch");
  selfcheck->add_option("--backend", *check_backend, "Backend spec")->required();
  selfcheck->add_option("--src-lang", *check_src, "Canary direction source")->capture_default_str();
  selfcheck->add_option("--tgt-lang", *check_tgt, "Canary direction target")->capture_default_str();
  selfcheck->callback(
      [check_backend, check_src, check_tgt]() { run_selfcheck(*check_backend, *check_src, *check_tgt); });
}

}  // namespace artifact::cli
