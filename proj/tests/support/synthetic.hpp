#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "artifact/datamodel.hpp"

namespace test_support {

// Frequent-word inventories with language-typical orthography; enough
// signal for a character n-gram identifier.
inline const std::vector<std::string>& english_words() {
  static const std::vector<std::string> words = {
      "the",   "of",     "and",   "to",      "in",     "is",    "was",    "for",   "on",
      "that",  "with",   "as",    "it",      "his",    "her",   "they",   "at",    "be",
      "this",  "have",   "from",  "or",      "one",    "had",   "by",     "word",  "but",
      "not",   "what",   "all",   "were",    "when",   "there", "can",    "said",  "which",
      "their", "time",   "will",  "how",     "about",  "many",  "then",   "them",  "would",
      "write", "like",   "these", "her",     "long",   "make",  "thing",  "see",   "him",
      "two",   "has",    "look",  "more",    "day",    "could", "come",   "did",   "number",
      "sound", "people", "over",  "know",    "water",  "than",  "call",   "first", "who",
      "may",   "down",   "side",  "been",    "now",    "find",  "any",    "new",   "work",
      "part",  "take",   "get",   "place",   "made",   "live",  "where",  "after", "back",
      "years", "government", "president",    "market", "report", "police", "world", "house"};
  return words;
}

inline const std::vector<std::string>& spanish_words() {
  static const std::vector<std::string> words = {
      "el",     "la",      "de",     "que",     "y",       "en",      "un",     "una",
      "es",     "los",     "se",     "del",     "las",     "por",     "con",    "para",
      "como",   "está",    "pero",   "más",     "fue",     "este",    "ha",     "sí",
      "porque", "esta",    "entre",  "cuando",  "muy",     "sin",     "sobre",  "también",
      "me",     "hasta",   "hay",    "donde",   "quien",   "desde",   "todo",   "nos",
      "durante", "todos",  "uno",    "les",     "ni",      "contra",  "otros",  "ese",
      "eso",    "ante",    "ellos",  "e",       "esto",    "mí",      "antes",  "algunos",
      "qué",    "unos",    "yo",     "otro",    "otras",   "otra",    "él",     "tanto",
      "esa",    "estos",   "mucho",  "quienes", "nada",    "muchos",  "cual",   "poco",
      "ella",   "estar",   "estas",  "algunas", "algo",    "nosotros", "gobierno", "país",
      "años",   "día",     "mundo",  "ciudad",  "señor",   "tiempo",  "mañana", "según"};
  return words;
}

inline const std::vector<std::string>& finnish_words() {
  static const std::vector<std::string> words = {
      "ja",       "on",       "ei",       "että",      "se",        "hän",      "oli",
      "ovat",     "mutta",    "kun",      "niin",      "myös",      "joka",     "mitä",
      "tämä",     "vuonna",   "kanssa",   "jälkeen",   "kaupunki",  "suomen",   "sekä",
      "ole",      "hyvin",    "jos",      "kuin",      "minä",      "sinä",     "hänen",
      "heidän",   "meidän",   "teidän",   "tässä",     "siellä",    "täällä",   "missä",
      "koska",    "vielä",    "aina",     "nyt",       "sitten",    "ennen",    "päivä",
      "yö",       "aamu",     "ilta",     "vesi",      "tuli",      "maa",      "ilma",
      "käsi",     "silmä",    "pää",      "sydän",     "ääni",      "kieli",    "työ",
      "koti",     "talo",     "ovi",      "ikkuna",    "pöytä",     "tuoli",    "kirja",
      "lehti",    "kuva",     "sana",     "asia",      "ihminen",   "lapsi",    "nainen",
      "mies",     "ystävä",   "perhe",    "äiti",      "isä",       "hallitus", "presidentti",
      "maailma",  "vuosi",    "aika",     "paikka",    "osa",       "pitkä",    "lyhyt"};
  return words;
}

// Pseudo-languages on disjoint alphabets.
inline const std::vector<std::string>& greek_pseudo_words() {
  static const std::vector<std::string> words = {
      "λογος", "καιρος", "πολις",  "θαλασσα", "ανθρωπος", "βιβλιο", "δρομος", "ημερα",
      "φως",   "νερο",   "ουρανος", "γη",     "χρονος",   "ψυχη",   "σοφια",  "αγορα",
      "φιλος", "μητηρ",  "πατηρ",  "παιδι",   "σπιτι",    "χερι",   "ματι",   "καρδια"};
  return words;
}

inline const std::vector<std::string>& cyrillic_pseudo_words() {
  static const std::vector<std::string> words = {
      "слово", "время",  "город", "море",   "человек", "книга", "дорога", "день",
      "свет",  "вода",   "небо",  "земля",  "год",     "душа",  "мудрость", "рынок",
      "друг",  "мать",   "отец",  "ребенок", "дом",    "рука",  "глаз",   "сердце"};
  return words;
}

inline std::string make_sentence(const std::vector<std::string>& words, std::mt19937& rng,
                                 std::size_t min_words = 8, std::size_t max_words = 14) {
  std::uniform_int_distribution<std::size_t> n_dist(min_words, max_words);
  std::uniform_int_distribution<std::size_t> w_dist(0, words.size() - 1);
  const std::size_t n = n_dist(rng);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out.push_back(' ');
    out += words[w_dist(rng)];
  }
  return out;
}

inline std::vector<std::string> make_sentences(const std::vector<std::string>& words,
                                               std::size_t count, std::uint32_t seed,
                                               std::size_t min_words = 8,
                                               std::size_t max_words = 14) {
  std::mt19937 rng(seed);
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(make_sentence(words, rng, min_words, max_words));
  return out;
}

// Synthetic vocabulary of pronounceable source words v000..v(n-1) plus a
// per-word target image t-prefixed; the dictionary is a bijection.
struct PlantedDictionary {
  std::vector<std::string> source_words;
  std::vector<std::string> target_words;

  static PlantedDictionary make(std::size_t vocab_size) {
    PlantedDictionary d;
    d.source_words.reserve(vocab_size);
    d.target_words.reserve(vocab_size);
    for (std::size_t i = 0; i < vocab_size; ++i) {
      d.source_words.push_back("s" + std::to_string(i));
      d.target_words.push_back("t" + std::to_string(i));
    }
    return d;
  }
};

// A bitext whose target sides are dictionary images of the source under
// a known per-sentence permutation; gold is the planted link set.
struct PlantedCorpus {
  std::vector<artifact::BitextPair> bitext;
  std::vector<artifact::Alignment> gold;
};

// unique_words: sample words without replacement so every token has one
// unambiguous translation slot in its sentence.
inline PlantedCorpus make_planted_corpus(const PlantedDictionary& dict, std::size_t n_pairs,
                                         std::uint32_t seed, std::size_t min_len = 6,
                                         std::size_t max_len = 12, bool permute = true) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> len_dist(min_len, max_len);
  PlantedCorpus corpus;
  std::vector<std::size_t> word_ids(dict.source_words.size());
  std::iota(word_ids.begin(), word_ids.end(), 0);
  for (std::size_t k = 0; k < n_pairs; ++k) {
    const std::size_t len = std::min(len_dist(rng), dict.source_words.size());
    std::shuffle(word_ids.begin(), word_ids.end(), rng);
    std::vector<std::size_t> positions(len);
    std::iota(positions.begin(), positions.end(), 0);
    if (permute) std::shuffle(positions.begin(), positions.end(), rng);
    // positions[i] = target slot of source token i
    std::string src, tgt;
    std::vector<std::string> tgt_tokens(len);
    artifact::Alignment gold;
    gold.pair_index = k;
    for (std::size_t i = 0; i < len; ++i) {
      if (i) src.push_back(' ');
      src += dict.source_words[word_ids[i]];
      tgt_tokens[positions[i]] = dict.target_words[word_ids[i]];
      gold.links.push_back({i, positions[i]});
    }
    for (std::size_t j = 0; j < len; ++j) {
      if (j) tgt.push_back(' ');
      tgt += tgt_tokens[j];
    }
    gold.normalize();
    corpus.bitext.push_back(artifact::make_bitext_pair(src, tgt));
    corpus.gold.push_back(std::move(gold));
  }
  return corpus;
}

// Copy corpus: source == target over a shared vocabulary.
inline std::vector<artifact::BitextPair> make_copy_corpus(std::size_t n_pairs, std::uint32_t seed,
                                                          std::size_t vocab_size = 200,
                                                          std::size_t min_len = 5,
                                                          std::size_t max_len = 12) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> len_dist(min_len, max_len);
  std::uniform_int_distribution<std::size_t> w_dist(0, vocab_size - 1);
  std::vector<artifact::BitextPair> bitext;
  bitext.reserve(n_pairs);
  for (std::size_t k = 0; k < n_pairs; ++k) {
    const std::size_t len = len_dist(rng);
    std::string s;
    for (std::size_t i = 0; i < len; ++i) {
      if (i) s.push_back(' ');
      s += "w" + std::to_string(w_dist(rng));
    }
    bitext.push_back(artifact::make_bitext_pair(s, s));
  }
  return bitext;
}

// Random uncorrelated bitext for likelihood-monotonicity checks.
inline std::vector<artifact::BitextPair> make_random_corpus(std::size_t n_pairs,
                                                            std::uint32_t seed,
                                                            std::size_t vocab_size = 60) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> len_dist(3, 9);
  std::uniform_int_distribution<std::size_t> w_dist(0, vocab_size - 1);
  std::vector<artifact::BitextPair> bitext;
  bitext.reserve(n_pairs);
  for (std::size_t k = 0; k < n_pairs; ++k) {
    std::string src, tgt;
    const std::size_t ns = len_dist(rng), nt = len_dist(rng);
    for (std::size_t i = 0; i < ns; ++i) {
      if (i) src.push_back(' ');
      src += "a" + std::to_string(w_dist(rng));
    }
    for (std::size_t j = 0; j < nt; ++j) {
      if (j) tgt.push_back(' ');
      tgt += "b" + std::to_string(w_dist(rng));
    }
    bitext.push_back(artifact::make_bitext_pair(src, tgt));
  }
  return bitext;
}

// Small NLI dataset with shared premises and overlapping hypotheses.
inline std::vector<artifact::NliExample> make_nli_fixture(std::size_t n_examples,
                                                          std::uint32_t seed,
                                                          const std::string& language = "en") {
  std::mt19937 rng(seed);
  const auto& words = english_words();
  std::uniform_int_distribution<std::size_t> w_dist(0, words.size() - 1);
  std::vector<artifact::NliExample> dataset;
  static const artifact::NliLabel labels[3] = {artifact::NliLabel::entailment,
                                               artifact::NliLabel::neutral,
                                               artifact::NliLabel::contradiction};
  std::string premise;
  for (std::size_t i = 0; i < n_examples; ++i) {
    if (i % 3 == 0) premise = make_sentence(words, rng, 6, 10);
    artifact::NliExample e;
    e.id = "ex" + std::to_string(i);
    e.premise = premise;
    // Hypothesis reuses premise words with a few novel ones, so overlap
    // starts high.
    const auto premise_tokens = artifact::make_bitext_pair(premise, premise).source_tokens;
    std::string hyp;
    for (std::size_t t = 0; t < 5; ++t) {
      if (t) hyp.push_back(' ');
      if (t < 3 && t < premise_tokens.size())
        hyp += premise_tokens[t];
      else
        hyp += words[w_dist(rng)];
    }
    e.hypothesis = hyp;
    e.label = labels[i % 3];
    e.language = language;
    e.provenance = artifact::Provenance::original;
    e.genre = (i % 2 == 0) ? "fiction" : "news";
    dataset.push_back(std::move(e));
  }
  return dataset;
}

}  // namespace test_support
