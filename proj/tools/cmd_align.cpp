#include <iostream>
#include <memory>

#include "CLI11.hpp"

#include "artifact/aligner.hpp"
#include "artifact/error.hpp"
#include "cli_util.hpp"

namespace artifact::cli {

namespace {

struct TrainArgs {
  std::string src, tgt, tsv;
  std::string aux_src, aux_tgt;
  std::string model_out;
  std::string src_lang, tgt_lang;
  TrainingConfig config;
  bool ibm1_only = false;
};

void run_train(const TrainArgs& args, int workers) {
  RunScope scope("align train");
  scope.config_if("src", args.src);
  scope.config_if("tgt", args.tgt);
  scope.config_if("tsv", args.tsv);
  scope.config("iterations", std::to_string(args.config.ibm1_iterations));
  scope.config("diag-iterations",
               std::to_string(args.ibm1_only ? 0 : args.config.diagonal_iterations));
  scope.config("lambda", std::to_string(args.config.initial_lambda));
  scope.config("p0", std::to_string(args.config.p0));
  scope.config("lambda-steps", std::to_string(args.config.lambda_steps));
  if (!args.src.empty()) scope.input(args.src);
  if (!args.tgt.empty()) scope.input(args.tgt);
  if (!args.tsv.empty()) scope.input(args.tsv);

  auto bitext = load_bitext(args.src, args.tgt, args.tsv);
  if (!args.aux_src.empty() || !args.aux_tgt.empty()) {
    scope.input(args.aux_src);
    scope.input(args.aux_tgt);
    const auto aux = load_bitext(args.aux_src, args.aux_tgt, "");
    bitext.insert(bitext.end(), aux.begin(), aux.end());
    scope.config("aux-pairs", std::to_string(aux.size()));
  }

  TrainingConfig config = args.config;
  config.workers = workers;
  TrainStats stats;
  AlignmentModel model = args.ibm1_only ? train_ibm1(bitext, config, &stats)
                                        : train_alignment_model(bitext, config, &stats);
  model.source_lang = args.src_lang;
  model.target_lang = args.tgt_lang;
  model.save(args.model_out);
  scope.output(args.model_out);
  scope.finish(args.model_out);
  std::cerr << "trained on " << bitext.size() << " pairs";
  if (!stats.log_likelihood.empty())
    std::cerr << ", final log-likelihood " << stats.log_likelihood.back();
  if (model.diagonal) std::cerr << ", tension " << model.lambda;
  std::cerr << "\n";
}

struct ViterbiArgs {
  std::string model_path, reverse_model_path;
  std::string src, tgt, tsv;
  std::string out;
  std::string heuristic = "grow-diag-final-and";
};

void run_viterbi(const ViterbiArgs& args, int workers) {
  RunScope scope("align viterbi");
  scope.config("model", args.model_path);
  scope.config_if("reverse-model", args.reverse_model_path);
  scope.config_if("symmetrize", args.reverse_model_path.empty() ? "" : args.heuristic);
  scope.input(args.model_path);
  if (!args.src.empty()) scope.input(args.src);
  if (!args.tgt.empty()) scope.input(args.tgt);
  if (!args.tsv.empty()) scope.input(args.tsv);

  const auto bitext = load_bitext(args.src, args.tgt, args.tsv);
  const AlignmentModel model = AlignmentModel::load(args.model_path);
  std::vector<Alignment> alignments = viterbi_align_corpus(model, bitext, workers);

  if (!args.reverse_model_path.empty()) {
    scope.input(args.reverse_model_path);
    const AlignmentModel reverse_model = AlignmentModel::load(args.reverse_model_path);
    std::vector<BitextPair> swapped;
    swapped.reserve(bitext.size());
    for (const BitextPair& p : bitext) swapped.push_back(make_bitext_pair(p.target, p.source));
    const auto reverse_alignments = viterbi_align_corpus(reverse_model, swapped, workers);
    const auto heuristic = symmetrize_heuristic_from_string(args.heuristic);
    for (std::size_t k = 0; k < alignments.size(); ++k) {
      Alignment transposed;
      transposed.pair_index = k;
      for (const AlignLink& l : reverse_alignments[k].links)
        transposed.links.push_back({l.tgt, l.src});
      transposed.normalize();
      alignments[k] = symmetrize(alignments[k], transposed, heuristic,
                                 bitext[k].source_tokens.size(), bitext[k].target_tokens.size());
    }
  }
  write_pharaoh(alignments, args.out);
  scope.output(args.out);
  scope.finish(args.out);
}

struct SymmetrizeArgs {
  std::string forward, reverse;
  std::string src, tgt, tsv;
  std::string heuristic = "grow-diag-final-and";
  std::string out;
};

void run_symmetrize(const SymmetrizeArgs& args) {
  RunScope scope("align symmetrize");
  scope.config("heuristic", args.heuristic);
  scope.input(args.forward);
  scope.input(args.reverse);
  const auto bitext = load_bitext(args.src, args.tgt, args.tsv);
  const auto forward = load_pharaoh(args.forward);
  const auto reverse = load_pharaoh(args.reverse);
  if (forward.size() != bitext.size() || reverse.size() != bitext.size())
    throw ValidationError("alignment file lengths do not match the bitext");
  const auto heuristic = symmetrize_heuristic_from_string(args.heuristic);
  std::vector<Alignment> out;
  out.reserve(bitext.size());
  for (std::size_t k = 0; k < bitext.size(); ++k) {
    Alignment transposed;
    transposed.pair_index = k;
    for (const AlignLink& l : reverse[k].links) transposed.links.push_back({l.tgt, l.src});
    transposed.normalize();
    out.push_back(symmetrize(forward[k], transposed, heuristic, bitext[k].source_tokens.size(),
                             bitext[k].target_tokens.size()));
  }
  write_pharaoh(out, args.out);
  scope.output(args.out);
  scope.finish(args.out);
}

}  // namespace

void register_cmd_align(CLI::App& app, const GlobalOptions& global) {
  CLI::App* cmd = app.add_subcommand("align", "Statistical word alignment");
  cmd->require_subcommand(1);
  const int* workers = &global.workers;

  auto train_args = std::make_shared<TrainArgs>();
  CLI::App* train = cmd->add_subcommand("train", "Train the alignment model");
  train->add_option("--src", train_args->src, "Source text, one tokenized sentence per line");
  train->add_option("--tgt", train_args->tgt, "Target text");
  train->add_option("--tsv", train_args->tsv, "Alternative: TSV bitext");
  train->add_option("--aux-src", train_args->aux_src, "Auxiliary bitext source to aid training");
  train->add_option("--aux-tgt", train_args->aux_tgt, "Auxiliary bitext target");
  train->add_option("--model-out", train_args->model_out, "Model file to write")->required();
  train->add_option("--iterations", train_args->config.ibm1_iterations, "Model 1 EM iterations")
      ->capture_default_str();
  train->add_option("--diag-iterations", train_args->config.diagonal_iterations,
                    "Diagonal-prior EM iterations")
      ->capture_default_str();
  train->add_option("--lambda", train_args->config.initial_lambda, "Initial diagonal tension")
      ->capture_default_str();
  train->add_option("--p0", train_args->config.p0, "Null alignment probability")
      ->capture_default_str();
  train->add_option("--lambda-steps", train_args->config.lambda_steps,
                    "Tension gradient steps per M-step")
      ->capture_default_str();
  train->add_flag("--ibm1-only", train_args->ibm1_only, "Skip the diagonal stage");
  train->add_option("--src-lang", train_args->src_lang, "Source language tag (metadata)");
  train->add_option("--tgt-lang", train_args->tgt_lang, "Target language tag (metadata)");
  train->callback([train_args, workers]() { run_train(*train_args, *workers); });

  auto viterbi_args = std::make_shared<ViterbiArgs>();
  CLI::App* viterbi = cmd->add_subcommand("viterbi", "Align a bitext with a trained model");
  viterbi->add_option("--model", viterbi_args->model_path, "Forward model")->required();
  viterbi->add_option("--reverse-model", viterbi_args->reverse_model_path,
                      "Reverse-direction model; enables symmetrization");
  viterbi->add_option("--symmetrize", viterbi_args->heuristic,
                      "intersection | union | grow-diag-final-and")
      ->capture_default_str();
  viterbi->add_option("--src", viterbi_args->src, "Source text");
  viterbi->add_option("--tgt", viterbi_args->tgt, "Target text");
  viterbi->add_option("--tsv", viterbi_args->tsv, "Alternative: TSV bitext");
  viterbi->add_option("--out", viterbi_args->out, "Pharaoh output")->required();
  viterbi->callback([viterbi_args, workers]() { run_viterbi(*viterbi_args, *workers); });

  auto sym_args = std::make_shared<SymmetrizeArgs>();
  CLI::App* sym = cmd->add_subcommand("symmetrize", "Combine forward and reverse alignments");
  sym->add_option("--forward", sym_args->forward, "Forward Pharaoh file")->required();
  sym->add_option("--reverse", sym_args->reverse, "Reverse Pharaoh file (target->source)")
      ->required();
  sym->add_option("--src", sym_args->src, "Source text (for bounds)");
  sym->add_option("--tgt", sym_args->tgt, "Target text");
  sym->add_option("--tsv", sym_args->tsv, "Alternative: TSV bitext");
  sym->add_option("--heuristic", sym_args->heuristic,
                  "intersection | union | grow-diag-final-and")
      ->capture_default_str();
  sym->add_option("--out", sym_args->out, "Pharaoh output")->required();
  sym->callback([sym_args]() { run_symmetrize(*sym_args); });
}

}  // namespace artifact::cli
