#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace artifact {

struct LangIdConfig {
  int min_order = 1;
  int max_order = 3;
  std::size_t vocab_size = 5000;  // retained n-grams, by corpus frequency
  double alpha = 0.1;             // add-alpha smoothing
  std::size_t min_texts_per_language = 100;
};

// Multinomial naive Bayes over character 1..3-grams. Deterministic given
// identical training input order: the vocabulary is the top-N n-grams by
// total frequency with ties broken lexicographically.
class LangIdModel {
 public:
  struct Prediction {
    std::string language;
    double confidence = 0.0;  // normalized posterior
  };

  LangIdModel() = default;

  const std::vector<std::string>& languages() const { return languages_; }
  const LangIdConfig& config() const { return config_; }
  const std::vector<std::string>& vocab() const { return vocab_; }

  Prediction classify(std::string_view text) const;

  // Per-language log posterior (up to the shared constant): uniform prior
  // plus summed n-gram log probabilities. Exposed so independent checks
  // can recompute the posterior from public state.
  std::vector<double> log_scores(std::string_view text) const;

  // Smoothed log probability of one n-gram under a language; n-grams
  // outside the vocabulary share a single unseen slot.
  double ngram_log_prob(std::size_t lang_index, std::string_view ngram) const;

  void save(const std::string& path) const;
  static LangIdModel load(const std::string& path);

  // N-grams of a text under this model's configuration (code point
  // based), shared with training.
  static std::vector<std::string> extract_ngrams(std::string_view text, const LangIdConfig& config);

  friend LangIdModel train_langid(const std::map<std::string, std::vector<std::string>>& corpus,
                                  const LangIdConfig& config);

 private:
  LangIdConfig config_;
  std::vector<std::string> languages_;                   // sorted
  std::vector<std::string> vocab_;                       // retained n-grams
  std::unordered_map<std::string, std::uint32_t> vocab_index_;
  std::vector<std::vector<std::uint64_t>> counts_;       // [lang][vocab]
  std::vector<std::uint64_t> unseen_counts_;             // [lang] mass outside vocab
  std::vector<std::uint64_t> totals_;                    // [lang]

  double smoothed_log_prob(std::size_t lang, std::uint64_t count) const;
};

// Trains on a language -> texts map. Requires at least two languages and
// config.min_texts_per_language texts for each.
LangIdModel train_langid(const std::map<std::string, std::vector<std::string>>& corpus,
                         const LangIdConfig& config = {});

}  // namespace artifact
