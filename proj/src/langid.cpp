#include "artifact/langid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "artifact/datamodel.hpp"
#include "artifact/error.hpp"
#include "artifact/text.hpp"
#include "artifact/utf8.hpp"

namespace artifact {

std::vector<std::string> LangIdModel::extract_ngrams(std::string_view text,
                                                     const LangIdConfig& config) {
  const utf8::Decoded d = utf8::decode(text);
  const auto& cps = d.code_points;
  std::vector<std::string> ngrams;
  for (int order = config.min_order; order <= config.max_order; ++order) {
    const std::size_t n = static_cast<std::size_t>(order);
    if (cps.size() < n) break;
    for (std::size_t i = 0; i + n <= cps.size(); ++i) {
      ngrams.push_back(std::string(
          text.substr(d.byte_offsets[i], d.byte_offsets[i + n] - d.byte_offsets[i])));
    }
  }
  return ngrams;
}

double LangIdModel::smoothed_log_prob(std::size_t lang, std::uint64_t count) const {
  // One extra smoothing slot stands in for every n-gram outside the
  // retained vocabulary.
  const double denom = static_cast<double>(totals_[lang]) +
                       config_.alpha * static_cast<double>(vocab_.size() + 1);
  return std::log((static_cast<double>(count) + config_.alpha) / denom);
}

double LangIdModel::ngram_log_prob(std::size_t lang_index, std::string_view ngram) const {
  const auto it = vocab_index_.find(std::string(ngram));
  if (it == vocab_index_.end()) return smoothed_log_prob(lang_index, unseen_counts_[lang_index]);
  return smoothed_log_prob(lang_index, counts_[lang_index][it->second]);
}

std::vector<double> LangIdModel::log_scores(std::string_view text) const {
  if (languages_.empty()) throw ValidationError("langid model is untrained");
  const auto ngrams = extract_ngrams(text, config_);
  std::vector<double> scores(languages_.size(), -std::log(static_cast<double>(languages_.size())));
  for (std::size_t lang = 0; lang < languages_.size(); ++lang)
    for (const std::string& g : ngrams) scores[lang] += ngram_log_prob(lang, g);
  return scores;
}

LangIdModel::Prediction LangIdModel::classify(std::string_view text) const {
  if (text::trim(text).empty()) throw ValidationError("cannot classify empty text");
  const std::vector<double> scores = log_scores(text);
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;
  // Softmax normalization against the maximum for stability.
  double z = 0.0;
  for (double s : scores) z += std::exp(s - scores[best]);
  return {languages_[best], 1.0 / z};
}

LangIdModel train_langid(const std::map<std::string, std::vector<std::string>>& corpus,
                         const LangIdConfig& config) {
  if (corpus.size() < 2)
    throw ValidationError("langid training needs at least 2 languages, got " +
                          std::to_string(corpus.size()));
  for (const auto& [lang, texts] : corpus) {
    if (texts.size() < config.min_texts_per_language)
      throw ValidationError("language " + lang + " has " + std::to_string(texts.size()) +
                            " training texts, need at least " +
                            std::to_string(config.min_texts_per_language));
  }

  LangIdModel model;
  model.config_ = config;
  for (const auto& [lang, texts] : corpus) model.languages_.push_back(lang);

  // Global n-gram frequencies decide the retained vocabulary.
  std::unordered_map<std::string, std::uint64_t> global;
  std::vector<std::unordered_map<std::string, std::uint64_t>> per_lang(model.languages_.size());
  for (std::size_t lang = 0; lang < model.languages_.size(); ++lang) {
    for (const std::string& txt : corpus.at(model.languages_[lang])) {
      for (std::string& g : LangIdModel::extract_ngrams(txt, config)) {
        ++global[g];
        ++per_lang[lang][g];
      }
    }
  }

  std::vector<std::pair<std::string, std::uint64_t>> ranked(global.begin(), global.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > config.vocab_size) ranked.resize(config.vocab_size);

  model.vocab_.reserve(ranked.size());
  for (auto& [g, _] : ranked) {
    model.vocab_index_.emplace(g, static_cast<std::uint32_t>(model.vocab_.size()));
    model.vocab_.push_back(g);
  }

  model.counts_.assign(model.languages_.size(), std::vector<std::uint64_t>(model.vocab_.size(), 0));
  model.unseen_counts_.assign(model.languages_.size(), 0);
  model.totals_.assign(model.languages_.size(), 0);
  for (std::size_t lang = 0; lang < model.languages_.size(); ++lang) {
    for (const auto& [g, count] : per_lang[lang]) {
      const auto it = model.vocab_index_.find(g);
      if (it == model.vocab_index_.end())
        model.unseen_counts_[lang] += count;
      else
        model.counts_[lang][it->second] += count;
      model.totals_[lang] += count;
    }
  }
  return model;
}

void LangIdModel::save(const std::string& path) const {
  std::string out = "#artifact-langid\t1\n";
  out += "config\t" + std::to_string(config_.min_order) + "\t" + std::to_string(config_.max_order) +
         "\t" + std::to_string(config_.vocab_size) + "\t" + std::to_string(config_.alpha) + "\n";
  out += "languages";
  for (const std::string& lang : languages_) out += "\t" + text::tsv_escape(lang);
  out += "\n";
  out += "unseen";
  for (std::uint64_t c : unseen_counts_) out += "\t" + std::to_string(c);
  out += "\n";
  for (std::size_t v = 0; v < vocab_.size(); ++v) {
    out += "ngram\t" + text::tsv_escape(vocab_[v]);
    for (std::size_t lang = 0; lang < languages_.size(); ++lang)
      out += "\t" + std::to_string(counts_[lang][v]);
    out += "\n";
  }
  atomic_write_file(path, out);
}

LangIdModel LangIdModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("#artifact-langid\t1"))
    throw ValidationError(path + ": not a langid model file");
  LangIdModel model;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = text::split(line, '\t');
    const std::string& kind = fields[0];
    auto fail = [&](const std::string& why) {
      throw ValidationError(path + ":" + std::to_string(line_no) + ": " + why);
    };
    if (kind == "config") {
      if (fields.size() != 5) fail("config line needs 4 values");
      model.config_.min_order = std::stoi(fields[1]);
      model.config_.max_order = std::stoi(fields[2]);
      model.config_.vocab_size = std::stoul(fields[3]);
      model.config_.alpha = std::stod(fields[4]);
    } else if (kind == "languages") {
      for (std::size_t i = 1; i < fields.size(); ++i)
        model.languages_.push_back(text::tsv_unescape(fields[i]));
      model.counts_.assign(model.languages_.size(), {});
      model.totals_.assign(model.languages_.size(), 0);
    } else if (kind == "unseen") {
      if (fields.size() != model.languages_.size() + 1) fail("unseen arity mismatch");
      for (std::size_t i = 1; i < fields.size(); ++i)
        model.unseen_counts_.push_back(std::stoull(fields[i]));
    } else if (kind == "ngram") {
      if (fields.size() != model.languages_.size() + 2) fail("ngram arity mismatch");
      const std::string g = text::tsv_unescape(fields[1]);
      model.vocab_index_.emplace(g, static_cast<std::uint32_t>(model.vocab_.size()));
      model.vocab_.push_back(g);
      for (std::size_t lang = 0; lang < model.languages_.size(); ++lang)
        model.counts_[lang].push_back(std::stoull(fields[lang + 2]));
    } else {
      fail("unknown record kind " + kind);
    }
  }
  if (model.languages_.size() < 2) throw ValidationError(path + ": model has fewer than 2 languages");
  for (std::size_t lang = 0; lang < model.languages_.size(); ++lang) {
    std::uint64_t total = model.unseen_counts_.empty() ? 0 : model.unseen_counts_[lang];
    for (std::uint64_t c : model.counts_[lang]) total += c;
    model.totals_[lang] = total;
  }
  return model;
}

}  // namespace artifact
