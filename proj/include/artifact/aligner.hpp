#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "artifact/datamodel.hpp"

namespace artifact {

// Interned vocabulary; id 0 on the source side is the null token.
class Vocab {
 public:
  static constexpr std::uint32_t kNull = 0;
  static constexpr const char* kNullSurface = "<null>";

  std::uint32_t intern(std::string_view word, std::size_t max_size);
  std::optional<std::uint32_t> find(std::string_view word) const;
  const std::string& word(std::uint32_t id) const { return words_[id]; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::string> words_;
};

struct TrainingConfig {
  int ibm1_iterations = 5;
  int diagonal_iterations = 5;
  double initial_lambda = 4.0;
  double p0 = 0.08;
  int lambda_steps = 8;  // gradient steps on the tension per M-step
  double lambda_min = 0.0;
  double lambda_max = 14.0;
  std::size_t max_vocab = 1'000'000;
  int workers = 0;  // 0 = available parallelism
};

// Lexical translation table plus the diagonal-prior parameters of the
// reparameterized model. Rows live over the observed co-occurrence
// support; each row sums to 1 after every M-step.
struct AlignmentModel {
  Vocab source_vocab;  // includes the null token at id 0
  Vocab target_vocab;

  // CSR over (source id -> sorted target ids).
  std::vector<std::size_t> row_begin;  // size source_vocab.size() + 1
  std::vector<std::uint32_t> cols;
  std::vector<double> probs;

  bool diagonal = false;  // false: position-uniform Model 1 prior
  double lambda = 0.0;    // diagonal tension
  double p0 = 0.0;        // null-alignment mass under the diagonal prior
  std::string source_lang;
  std::string target_lang;

  // Flat index of (source id, target id) in cols/probs, or npos.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t flat_index(std::uint32_t src_id, std::uint32_t tgt_id) const;
  double prob(std::uint32_t src_id, std::uint32_t tgt_id) const;
  // Probability of a target word given a source word, by surface; 0 for
  // unknown words.
  double prob_surface(std::string_view src_word, std::string_view tgt_word) const;

  void save(const std::string& path) const;
  static AlignmentModel load(const std::string& path);
};

// Positional feature of the diagonal prior: -|i/n - j/m| with 1-based
// positions i over n source tokens and j over m target tokens.
double diagonal_feature(std::size_t i, std::size_t j, std::size_t n, std::size_t m);

struct TrainStats {
  // Corpus log-likelihood measured at the parameters entering each EM
  // iteration; non-decreasing by the EM guarantee.
  std::vector<double> log_likelihood;
  std::vector<double> lambda_trace;  // diagonal stage only
};

// Model 1 EM with a source-side null token and a position-uniform prior.
// Zero iterations yield the uniformly initialized co-occurrence table.
AlignmentModel train_ibm1(const std::vector<BitextPair>& bitext, const TrainingConfig& config,
                          TrainStats* stats = nullptr);

// Diagonal-prior EM stage: the prior of target position j on source
// position i is proportional to exp(lambda * diagonal_feature), with p0
// reserved for the null token. The tension is re-optimized every M-step
// by gradient steps with backtracking, which keeps the EM objective
// monotone.
AlignmentModel train_diagonal(const std::vector<BitextPair>& bitext, AlignmentModel init,
                              const TrainingConfig& config, TrainStats* stats = nullptr);

// Both stages back to back.
AlignmentModel train_alignment_model(const std::vector<BitextPair>& bitext,
                                     const TrainingConfig& config, TrainStats* stats = nullptr);

// One link per target token: the argmax of translation probability times
// prior, scanned over the null token first and source positions in
// ascending order, replaced only on strictly greater score. A winning
// null emits no link, so unknown target words stay unlinked.
Alignment viterbi_align(const AlignmentModel& model, const BitextPair& pair,
                        std::size_t pair_index = 0);

std::vector<Alignment> viterbi_align_corpus(const AlignmentModel& model,
                                            const std::vector<BitextPair>& bitext,
                                            int workers = 0);

enum class SymmetrizeHeuristic { intersection, set_union, grow_diag_final_and };

SymmetrizeHeuristic symmetrize_heuristic_from_string(const std::string& name);

// Combines a source->target alignment with a target->source alignment
// whose links have already been transposed into (src, tgt) orientation.
Alignment symmetrize(const Alignment& forward, const Alignment& reverse_transposed,
                     SymmetrizeHeuristic heuristic, std::size_t src_len, std::size_t tgt_len);

// Trains on the concatenation of target and auxiliary bitexts, then runs
// Viterbi over the target bitext only, in its original order.
std::vector<Alignment> align_with_auxiliary(const std::vector<BitextPair>& target_bitext,
                                            const std::vector<BitextPair>& auxiliary_bitext,
                                            const TrainingConfig& config,
                                            TrainStats* stats = nullptr);

}  // namespace artifact
