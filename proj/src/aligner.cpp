#include "artifact/aligner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <tuple>

#include "artifact/error.hpp"
#include "artifact/parallel.hpp"
#include "artifact/text.hpp"

namespace artifact {

namespace {
constexpr std::size_t kBlockSize = 64;  // fixed E-step blocks, see parallel.hpp
}

std::uint32_t Vocab::intern(std::string_view word, std::size_t max_size) {
  const auto it = index_.find(std::string(word));
  if (it != index_.end()) return it->second;
  if (words_.size() >= max_size)
    throw ValidationError("vocabulary overflow: more than " + std::to_string(max_size) + " types");
  const auto id = static_cast<std::uint32_t>(words_.size());
  words_.emplace_back(word);
  index_.emplace(words_.back(), id);
  return id;
}

std::optional<std::uint32_t> Vocab::find(std::string_view word) const {
  const auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t AlignmentModel::flat_index(std::uint32_t src_id, std::uint32_t tgt_id) const {
  if (src_id + 1 >= row_begin.size()) return npos;
  const auto lo = cols.begin() + static_cast<std::ptrdiff_t>(row_begin[src_id]);
  const auto hi = cols.begin() + static_cast<std::ptrdiff_t>(row_begin[src_id + 1]);
  const auto it = std::lower_bound(lo, hi, tgt_id);
  if (it == hi || *it != tgt_id) return npos;
  return static_cast<std::size_t>(it - cols.begin());
}

double AlignmentModel::prob(std::uint32_t src_id, std::uint32_t tgt_id) const {
  const std::size_t idx = flat_index(src_id, tgt_id);
  return idx == npos ? 0.0 : probs[idx];
}

double AlignmentModel::prob_surface(std::string_view src_word, std::string_view tgt_word) const {
  const auto src = source_vocab.find(src_word);
  const auto tgt = target_vocab.find(tgt_word);
  if (!src || !tgt) return 0.0;
  return prob(*src, *tgt);
}

double diagonal_feature(std::size_t i, std::size_t j, std::size_t n, std::size_t m) {
  return -std::fabs(static_cast<double>(i) / static_cast<double>(n) -
                    static_cast<double>(j) / static_cast<double>(m));
}

namespace {

struct EncodedPair {
  std::vector<std::uint32_t> src;
  std::vector<std::uint32_t> tgt;
};

std::vector<EncodedPair> encode_corpus(const std::vector<BitextPair>& bitext,
                                       AlignmentModel& model, std::size_t max_vocab) {
  if (bitext.empty()) throw ValidationError("cannot train an aligner on an empty bitext");
  std::vector<EncodedPair> corpus;
  corpus.reserve(bitext.size());
  for (std::size_t k = 0; k < bitext.size(); ++k) {
    const BitextPair& pair = bitext[k];
    if (pair.source_tokens.empty() || pair.target_tokens.empty())
      throw ValidationError("bitext pair " + std::to_string(k) + " has an empty side");
    EncodedPair enc;
    enc.src.reserve(pair.source_tokens.size());
    enc.tgt.reserve(pair.target_tokens.size());
    for (const std::string& w : pair.source_tokens)
      enc.src.push_back(model.source_vocab.intern(w, max_vocab));
    for (const std::string& w : pair.target_tokens)
      enc.tgt.push_back(model.target_vocab.intern(w, max_vocab));
    corpus.push_back(std::move(enc));
  }
  return corpus;
}

// CSR over every observed (source-or-null, target) co-occurrence, with
// uniform initial probabilities 1/|target vocab|.
void build_structure(AlignmentModel& model, const std::vector<EncodedPair>& corpus) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (const EncodedPair& pair : corpus) {
    for (const std::uint32_t f : pair.tgt) {
      edges.emplace_back(Vocab::kNull, f);
      for (const std::uint32_t e : pair.src) edges.emplace_back(e, f);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const std::size_t n_src = model.source_vocab.size();
  model.row_begin.assign(n_src + 1, 0);
  model.cols.clear();
  model.cols.reserve(edges.size());
  for (const auto& [e, f] : edges) {
    ++model.row_begin[e + 1];
    model.cols.push_back(f);
  }
  for (std::size_t r = 0; r < n_src; ++r) model.row_begin[r + 1] += model.row_begin[r];
  model.probs.assign(edges.size(), 1.0 / static_cast<double>(model.target_vocab.size()));
}

// Sentence-size classes let the tension objective be evaluated once per
// distinct (source length, target length) rather than once per pair.
struct SizeClasses {
  std::vector<std::pair<std::size_t, std::size_t>> sizes;  // (n, m)
  std::vector<std::size_t> class_of_pair;

  static SizeClasses build(const std::vector<EncodedPair>& corpus) {
    SizeClasses sc;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    sc.class_of_pair.reserve(corpus.size());
    for (const EncodedPair& pair : corpus) {
      const std::pair<std::size_t, std::size_t> key{pair.src.size(), pair.tgt.size()};
      const auto [it, inserted] = index.emplace(key, sc.sizes.size());
      if (inserted) sc.sizes.push_back(key);
      sc.class_of_pair.push_back(it->second);
    }
    return sc;
  }
};

struct EStepResult {
  double log_likelihood = 0.0;
  std::vector<double> counts;  // aligned with model.cols
  double emp_feat = 0.0;
  // Non-null posterior mass per (size class, target position); weights
  // the tension objective.
  std::vector<std::vector<double>> nonnull_mass;
};

struct BlockScratch {
  std::vector<std::pair<std::size_t, double>> emissions;  // (flat index, posterior)
  double log_likelihood = 0.0;
  double emp_feat = 0.0;
  std::vector<std::pair<std::uint64_t, double>> mass;  // packed (class, j) -> mass
};

EStepResult run_estep(const AlignmentModel& model, const std::vector<EncodedPair>& corpus,
                      const SizeClasses& size_classes, int workers) {
  const std::size_t n_blocks = (corpus.size() + kBlockSize - 1) / kBlockSize;
  std::vector<BlockScratch> blocks(n_blocks);

  for_each_block(corpus.size(), kBlockSize, workers, [&](std::size_t b, std::size_t begin,
                                                         std::size_t end) {
    BlockScratch& scratch = blocks[b];
    std::vector<double> scores;
    std::vector<std::size_t> flat;
    std::vector<std::pair<std::uint64_t, double>> mass_pairs;
    for (std::size_t k = begin; k < end; ++k) {
      const EncodedPair& pair = corpus[k];
      const std::size_t n = pair.src.size();
      const std::size_t m = pair.tgt.size();
      const std::size_t cls = size_classes.class_of_pair[k];
      for (std::size_t j0 = 0; j0 < m; ++j0) {
        const std::uint32_t f = pair.tgt[j0];
        const std::size_t j = j0 + 1;
        scores.assign(n + 1, 0.0);
        flat.assign(n + 1, AlignmentModel::npos);

        double z_diag = 0.0;
        if (model.diagonal) {
          for (std::size_t i = 1; i <= n; ++i)
            z_diag += std::exp(model.lambda * diagonal_feature(i, j, n, m));
        }
        const double null_prior =
            model.diagonal ? model.p0 : 1.0 / static_cast<double>(n + 1);
        flat[0] = model.flat_index(Vocab::kNull, f);
        scores[0] = null_prior * (flat[0] == AlignmentModel::npos ? 0.0 : model.probs[flat[0]]);
        double total = scores[0];
        for (std::size_t i = 1; i <= n; ++i) {
          const double prior =
              model.diagonal
                  ? (1.0 - model.p0) * std::exp(model.lambda * diagonal_feature(i, j, n, m)) /
                        z_diag
                  : 1.0 / static_cast<double>(n + 1);
          flat[i] = model.flat_index(pair.src[i - 1], f);
          scores[i] = prior * (flat[i] == AlignmentModel::npos ? 0.0 : model.probs[flat[i]]);
          total += scores[i];
        }
        if (total <= 0.0) continue;  // cannot happen on the training corpus
        scratch.log_likelihood += std::log(total);
        double nonnull = 0.0;
        double feat_sum = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
          const double post = scores[i] / total;
          if (post > 0.0) scratch.emissions.emplace_back(flat[i], post);
          if (i >= 1) {
            nonnull += post;
            feat_sum += post * diagonal_feature(i, j, n, m);
          }
        }
        scratch.emp_feat += feat_sum;
        mass_pairs.emplace_back((static_cast<std::uint64_t>(cls) << 32) | j0, nonnull);
      }
    }
    // Collapse the per-token mass records; sorted so the merge below adds
    // in a fixed order.
    std::sort(mass_pairs.begin(), mass_pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [key, v] : mass_pairs) {
      if (!scratch.mass.empty() && scratch.mass.back().first == key)
        scratch.mass.back().second += v;
      else
        scratch.mass.emplace_back(key, v);
    }
  });

  EStepResult result;
  result.counts.assign(model.cols.size(), 0.0);
  result.nonnull_mass.resize(size_classes.sizes.size());
  for (std::size_t c = 0; c < size_classes.sizes.size(); ++c)
    result.nonnull_mass[c].assign(size_classes.sizes[c].second, 0.0);
  for (const BlockScratch& scratch : blocks) {
    result.log_likelihood += scratch.log_likelihood;
    result.emp_feat += scratch.emp_feat;
    for (const auto& [idx, v] : scratch.emissions) result.counts[idx] += v;
    for (const auto& [key, v] : scratch.mass)
      result.nonnull_mass[key >> 32][key & 0xFFFFFFFF] += v;
  }
  return result;
}

void normalize_rows(AlignmentModel& model, const std::vector<double>& counts) {
  const std::size_t n_rows = model.row_begin.size() - 1;
  for (std::size_t r = 0; r < n_rows; ++r) {
    double row_sum = 0.0;
    for (std::size_t idx = model.row_begin[r]; idx < model.row_begin[r + 1]; ++idx)
      row_sum += counts[idx];
    if (row_sum <= 0.0) continue;  // word unseen this pass, keep old row
    for (std::size_t idx = model.row_begin[r]; idx < model.row_begin[r + 1]; ++idx)
      model.probs[idx] = counts[idx] / row_sum;
  }
}

// Tension objective restricted to lambda-dependent terms:
//   Q(lambda) = lambda * emp_feat - sum mass[c][j] * log Z(j; n, m, lambda)
// Concave in lambda, so accepted uphill steps keep EM monotone.
double tension_q(double lambda, double emp_feat, const SizeClasses& size_classes,
                 const std::vector<std::vector<double>>& mass) {
  double q = lambda * emp_feat;
  for (std::size_t c = 0; c < size_classes.sizes.size(); ++c) {
    const auto [n, m] = size_classes.sizes[c];
    for (std::size_t j0 = 0; j0 < m; ++j0) {
      if (mass[c][j0] == 0.0) continue;
      double z = 0.0;
      for (std::size_t i = 1; i <= n; ++i)
        z += std::exp(lambda * diagonal_feature(i, j0 + 1, n, m));
      q -= mass[c][j0] * std::log(z);
    }
  }
  return q;
}

double tension_gradient(double lambda, double emp_feat, const SizeClasses& size_classes,
                        const std::vector<std::vector<double>>& mass) {
  double grad = emp_feat;
  for (std::size_t c = 0; c < size_classes.sizes.size(); ++c) {
    const auto [n, m] = size_classes.sizes[c];
    for (std::size_t j0 = 0; j0 < m; ++j0) {
      if (mass[c][j0] == 0.0) continue;
      double z = 0.0, zf = 0.0;
      for (std::size_t i = 1; i <= n; ++i) {
        const double feat = diagonal_feature(i, j0 + 1, n, m);
        const double w = std::exp(lambda * feat);
        z += w;
        zf += w * feat;
      }
      grad -= mass[c][j0] * (zf / z);
    }
  }
  return grad;
}

double optimize_tension(double lambda, double emp_feat, const SizeClasses& size_classes,
                        const std::vector<std::vector<double>>& mass, double total_tokens,
                        const TrainingConfig& config) {
  auto clamp = [&](double x) { return std::min(std::max(x, config.lambda_min), config.lambda_max); };
  lambda = clamp(lambda);
  for (int step = 0; step < config.lambda_steps; ++step) {
    const double grad = tension_gradient(lambda, emp_feat, size_classes, mass);
    double delta = 20.0 * grad / total_tokens;  // reference update scale
    const double q0 = tension_q(lambda, emp_feat, size_classes, mass);
    double candidate = clamp(lambda + delta);
    int halvings = 0;
    while (candidate != lambda &&
           tension_q(candidate, emp_feat, size_classes, mass) < q0 && halvings < 40) {
      delta *= 0.5;
      candidate = clamp(lambda + delta);
      ++halvings;
    }
    if (candidate == lambda ||
        tension_q(candidate, emp_feat, size_classes, mass) < q0)
      break;
    lambda = candidate;
  }
  return lambda;
}

}  // namespace

AlignmentModel train_ibm1(const std::vector<BitextPair>& bitext, const TrainingConfig& config,
                          TrainStats* stats) {
  if (config.ibm1_iterations < 0) throw ValidationError("iteration count must be >= 0");
  AlignmentModel model;
  model.source_vocab.intern(Vocab::kNullSurface, config.max_vocab);
  const auto corpus = encode_corpus(bitext, model, config.max_vocab);
  build_structure(model, corpus);
  const auto size_classes = SizeClasses::build(corpus);

  for (int iter = 0; iter < config.ibm1_iterations; ++iter) {
    EStepResult e = run_estep(model, corpus, size_classes, config.workers);
    if (stats) stats->log_likelihood.push_back(e.log_likelihood);
    normalize_rows(model, e.counts);
  }
  return model;
}

AlignmentModel train_diagonal(const std::vector<BitextPair>& bitext, AlignmentModel init,
                              const TrainingConfig& config, TrainStats* stats) {
  if (config.diagonal_iterations < 0) throw ValidationError("iteration count must be >= 0");
  if (init.probs.empty()) throw ValidationError("diagonal stage needs an initialized model");
  if (config.p0 < 0.0 || config.p0 >= 1.0)
    throw ValidationError("p0 must lie in [0, 1)");
  AlignmentModel model = std::move(init);
  model.diagonal = true;
  model.lambda = std::min(std::max(config.initial_lambda, config.lambda_min), config.lambda_max);
  model.p0 = config.p0;

  // Re-encode against the model's vocabularies; training normally reuses
  // the Model 1 corpus, so this is a lookup pass.
  const std::size_t src_types_before = model.source_vocab.size();
  const std::size_t tgt_types_before = model.target_vocab.size();
  const auto corpus = encode_corpus(bitext, model, config.max_vocab);
  if (model.source_vocab.size() != src_types_before ||
      model.target_vocab.size() != tgt_types_before) {
    // New types appeared relative to the initializer: rebuild the
    // co-occurrence structure, carrying over known probabilities.
    AlignmentModel rebuilt;
    rebuilt.source_vocab = model.source_vocab;
    rebuilt.target_vocab = model.target_vocab;
    build_structure(rebuilt, corpus);
    for (std::size_t r = 0; r + 1 < rebuilt.row_begin.size(); ++r) {
      for (std::size_t idx = rebuilt.row_begin[r]; idx < rebuilt.row_begin[r + 1]; ++idx) {
        const double known = model.prob(static_cast<std::uint32_t>(r), rebuilt.cols[idx]);
        if (known > 0.0) rebuilt.probs[idx] = known;
      }
    }
    model.row_begin = std::move(rebuilt.row_begin);
    model.cols = std::move(rebuilt.cols);
    model.probs = std::move(rebuilt.probs);
  }
  const auto size_classes = SizeClasses::build(corpus);
  double total_tokens = 0.0;
  for (const EncodedPair& pair : corpus) total_tokens += static_cast<double>(pair.tgt.size());

  for (int iter = 0; iter < config.diagonal_iterations; ++iter) {
    EStepResult e = run_estep(model, corpus, size_classes, config.workers);
    if (stats) {
      stats->log_likelihood.push_back(e.log_likelihood);
      stats->lambda_trace.push_back(model.lambda);
    }
    normalize_rows(model, e.counts);
    if (config.lambda_steps > 0)
      model.lambda = optimize_tension(model.lambda, e.emp_feat, size_classes, e.nonnull_mass,
                                      total_tokens, config);
  }
  return model;
}

AlignmentModel train_alignment_model(const std::vector<BitextPair>& bitext,
                                     const TrainingConfig& config, TrainStats* stats) {
  AlignmentModel m1 = train_ibm1(bitext, config, stats);
  return train_diagonal(bitext, std::move(m1), config, stats);
}

Alignment viterbi_align(const AlignmentModel& model, const BitextPair& pair,
                        std::size_t pair_index) {
  Alignment alignment;
  alignment.pair_index = pair_index;
  const std::size_t n = pair.source_tokens.size();
  const std::size_t m = pair.target_tokens.size();
  if (n == 0 || m == 0) return alignment;

  std::vector<std::optional<std::uint32_t>> src_ids(n);
  for (std::size_t i = 0; i < n; ++i) src_ids[i] = model.source_vocab.find(pair.source_tokens[i]);

  for (std::size_t j0 = 0; j0 < m; ++j0) {
    const auto f = model.target_vocab.find(pair.target_tokens[j0]);
    const std::size_t j = j0 + 1;
    double z_diag = 0.0;
    if (model.diagonal) {
      for (std::size_t i = 1; i <= n; ++i)
        z_diag += std::exp(model.lambda * diagonal_feature(i, j, n, m));
    }
    const double null_prior = model.diagonal ? model.p0 : 1.0 / static_cast<double>(n + 1);
    double best = null_prior * (f ? model.prob(Vocab::kNull, *f) : 0.0);
    std::ptrdiff_t best_i = -1;  // null
    for (std::size_t i = 1; i <= n; ++i) {
      const double prior =
          model.diagonal
              ? (1.0 - model.p0) * std::exp(model.lambda * diagonal_feature(i, j, n, m)) / z_diag
              : 1.0 / static_cast<double>(n + 1);
      const double t = (f && src_ids[i - 1]) ? model.prob(*src_ids[i - 1], *f) : 0.0;
      const double score = prior * t;
      if (score > best) {
        best = score;
        best_i = static_cast<std::ptrdiff_t>(i) - 1;
      }
    }
    if (best_i >= 0) alignment.links.push_back({static_cast<std::size_t>(best_i), j0});
  }
  alignment.normalize();
  return alignment;
}

std::vector<Alignment> viterbi_align_corpus(const AlignmentModel& model,
                                            const std::vector<BitextPair>& bitext, int workers) {
  std::vector<Alignment> alignments(bitext.size());
  for_each_block(bitext.size(), kBlockSize, workers,
                 [&](std::size_t, std::size_t begin, std::size_t end) {
                   for (std::size_t k = begin; k < end; ++k)
                     alignments[k] = viterbi_align(model, bitext[k], k);
                 });
  return alignments;
}

SymmetrizeHeuristic symmetrize_heuristic_from_string(const std::string& name) {
  if (name == "intersection") return SymmetrizeHeuristic::intersection;
  if (name == "union") return SymmetrizeHeuristic::set_union;
  if (name == "grow-diag-final-and" || name == "gdfa")
    return SymmetrizeHeuristic::grow_diag_final_and;
  throw ValidationError("unknown symmetrization heuristic \"" + name + "\"");
}

Alignment symmetrize(const Alignment& forward, const Alignment& reverse_transposed,
                     SymmetrizeHeuristic heuristic, std::size_t src_len, std::size_t tgt_len) {
  auto check_bounds = [&](const Alignment& a, const char* which) {
    for (const AlignLink& l : a.links)
      if (l.src >= src_len || l.tgt >= tgt_len)
        throw ValidationError(std::string(which) + " alignment link " + std::to_string(l.src) +
                              "-" + std::to_string(l.tgt) + " out of bounds for lengths " +
                              std::to_string(src_len) + "x" + std::to_string(tgt_len));
  };
  check_bounds(forward, "forward");
  check_bounds(reverse_transposed, "reverse");

  std::vector<AlignLink> fwd = forward.links;
  std::vector<AlignLink> rev = reverse_transposed.links;
  std::sort(fwd.begin(), fwd.end());
  std::sort(rev.begin(), rev.end());

  Alignment out;
  out.pair_index = forward.pair_index;
  if (heuristic == SymmetrizeHeuristic::set_union) {
    std::set_union(fwd.begin(), fwd.end(), rev.begin(), rev.end(), std::back_inserter(out.links));
    return out;
  }
  std::vector<AlignLink> inter;
  std::set_intersection(fwd.begin(), fwd.end(), rev.begin(), rev.end(),
                        std::back_inserter(inter));
  if (heuristic == SymmetrizeHeuristic::intersection) {
    out.links = std::move(inter);
    return out;
  }

  // grow-diag-final-and, 8-connected neighborhood.
  std::vector<std::vector<bool>> in_union(src_len, std::vector<bool>(tgt_len, false));
  std::vector<std::vector<bool>> aligned(src_len, std::vector<bool>(tgt_len, false));
  std::vector<bool> src_aligned(src_len, false), tgt_aligned(tgt_len, false);
  std::vector<AlignLink> union_links;
  std::set_union(fwd.begin(), fwd.end(), rev.begin(), rev.end(), std::back_inserter(union_links));
  for (const AlignLink& l : union_links) in_union[l.src][l.tgt] = true;
  for (const AlignLink& l : inter) {
    aligned[l.src][l.tgt] = true;
    src_aligned[l.src] = true;
    tgt_aligned[l.tgt] = true;
  }
  static constexpr int kNeighbors[8][2] = {{-1, 0}, {0, -1}, {1, 0},  {0, 1},
                                           {-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < src_len; ++i) {
      for (std::size_t j = 0; j < tgt_len; ++j) {
        if (!aligned[i][j]) continue;
        for (const auto& d : kNeighbors) {
          const std::ptrdiff_t ni = static_cast<std::ptrdiff_t>(i) + d[0];
          const std::ptrdiff_t nj = static_cast<std::ptrdiff_t>(j) + d[1];
          if (ni < 0 || nj < 0 || ni >= static_cast<std::ptrdiff_t>(src_len) ||
              nj >= static_cast<std::ptrdiff_t>(tgt_len))
            continue;
          const auto ui = static_cast<std::size_t>(ni);
          const auto uj = static_cast<std::size_t>(nj);
          if (aligned[ui][uj] || !in_union[ui][uj]) continue;
          if (src_aligned[ui] && tgt_aligned[uj]) continue;
          aligned[ui][uj] = true;
          src_aligned[ui] = true;
          tgt_aligned[uj] = true;
          changed = true;
        }
      }
    }
  }
  // final-and over each directional alignment: both endpoints unaligned.
  for (const auto* dir : {&fwd, &rev}) {
    for (const AlignLink& l : *dir) {
      if (aligned[l.src][l.tgt]) continue;
      if (src_aligned[l.src] || tgt_aligned[l.tgt]) continue;
      aligned[l.src][l.tgt] = true;
      src_aligned[l.src] = true;
      tgt_aligned[l.tgt] = true;
    }
  }
  for (std::size_t i = 0; i < src_len; ++i)
    for (std::size_t j = 0; j < tgt_len; ++j)
      if (aligned[i][j]) out.links.push_back({i, j});
  return out;
}

std::vector<Alignment> align_with_auxiliary(const std::vector<BitextPair>& target_bitext,
                                            const std::vector<BitextPair>& auxiliary_bitext,
                                            const TrainingConfig& config, TrainStats* stats) {
  std::vector<BitextPair> combined;
  combined.reserve(target_bitext.size() + auxiliary_bitext.size());
  combined.insert(combined.end(), target_bitext.begin(), target_bitext.end());
  combined.insert(combined.end(), auxiliary_bitext.begin(), auxiliary_bitext.end());
  const AlignmentModel model = train_alignment_model(combined, config, stats);
  return viterbi_align_corpus(model, target_bitext, config.workers);
}

void AlignmentModel::save(const std::string& path) const {
  std::string out = "#artifact-align\t1\n";
  out += "langs\t" + text::tsv_escape(source_lang) + "\t" + text::tsv_escape(target_lang) + "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g\t%.17g", lambda, p0);
  out += "params\t" + std::string(diagonal ? "diagonal" : "ibm1") + "\t" + buf + "\n";
  for (std::size_t r = 0; r + 1 < row_begin.size(); ++r) {
    for (std::size_t idx = row_begin[r]; idx < row_begin[r + 1]; ++idx) {
      std::snprintf(buf, sizeof(buf), "%.17g", probs[idx]);
      out += "t\t" + text::tsv_escape(source_vocab.word(static_cast<std::uint32_t>(r))) + "\t" +
             text::tsv_escape(target_vocab.word(cols[idx])) + "\t" + buf + "\n";
    }
  }
  atomic_write_file(path, out);
}

AlignmentModel AlignmentModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("#artifact-align\t1"))
    throw ValidationError(path + ": not an alignment model file");
  AlignmentModel model;
  model.source_vocab.intern(Vocab::kNullSurface, static_cast<std::size_t>(-1));
  std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> triples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = text::split(line, '\t');
    auto fail = [&](const std::string& why) {
      throw ValidationError(path + ":" + std::to_string(line_no) + ": " + why);
    };
    if (fields[0] == "langs") {
      if (fields.size() != 3) fail("langs needs 2 values");
      model.source_lang = text::tsv_unescape(fields[1]);
      model.target_lang = text::tsv_unescape(fields[2]);
    } else if (fields[0] == "params") {
      if (fields.size() != 4) fail("params needs 3 values");
      model.diagonal = fields[1] == "diagonal";
      model.lambda = std::stod(fields[2]);
      model.p0 = std::stod(fields[3]);
    } else if (fields[0] == "t") {
      if (fields.size() != 4) fail("t row needs 3 values");
      const std::uint32_t e =
          model.source_vocab.intern(text::tsv_unescape(fields[1]), static_cast<std::size_t>(-1));
      const std::uint32_t f =
          model.target_vocab.intern(text::tsv_unescape(fields[2]), static_cast<std::size_t>(-1));
      triples.emplace_back(e, f, std::stod(fields[3]));
    } else {
      fail("unknown record kind " + fields[0]);
    }
  }
  std::sort(triples.begin(), triples.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });
  model.row_begin.assign(model.source_vocab.size() + 1, 0);
  for (const auto& [e, f, p] : triples) {
    ++model.row_begin[e + 1];
    model.cols.push_back(f);
    model.probs.push_back(p);
  }
  for (std::size_t r = 0; r + 1 < model.row_begin.size(); ++r)
    model.row_begin[r + 1] += model.row_begin[r];
  return model;
}

}  // namespace artifact
