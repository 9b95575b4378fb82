#include "doctest.h"

#include <random>

#include "artifact/filter.hpp"
#include "support/synthetic.hpp"

using namespace artifact;
namespace ts = test_support;

namespace {

BitextPair pair_of_lengths(std::size_t n_src, std::size_t n_tgt) {
  std::string src, tgt;
  for (std::size_t i = 0; i < n_src; ++i) src += (i ? " w" : "w") + std::to_string(i);
  for (std::size_t j = 0; j < n_tgt; ++j) tgt += (j ? " v" : "v") + std::to_string(j);
  return make_bitext_pair(src, tgt);
}

}  // namespace

TEST_CASE("length threshold is exact at the boundary") {
  const FilterConfig config;
  CHECK(filter_pair(pair_of_lengths(250, 200), nullptr, config) == FilterVerdict::keep);
  CHECK(filter_pair(pair_of_lengths(251, 200), nullptr, config) == FilterVerdict::too_long);
  CHECK(filter_pair(pair_of_lengths(200, 251), nullptr, config) == FilterVerdict::too_long);
}

TEST_CASE("ratio threshold is exact and symmetric") {
  const FilterConfig config;
  CHECK(filter_pair(pair_of_lengths(30, 20), nullptr, config) == FilterVerdict::keep);  // 1.5
  CHECK(filter_pair(pair_of_lengths(31, 20), nullptr, config) == FilterVerdict::ratio);
  CHECK(filter_pair(pair_of_lengths(20, 31), nullptr, config) == FilterVerdict::ratio);
  CHECK(filter_pair(pair_of_lengths(30, 10), nullptr, config) == FilterVerdict::ratio);  // 3.0
  CHECK(filter_pair(pair_of_lengths(10, 10), nullptr, config) == FilterVerdict::keep);
}

TEST_CASE("rule order puts too_long before ratio") {
  const FilterConfig config;
  // 600 vs 100 violates both; the first rule wins.
  CHECK(filter_pair(pair_of_lengths(600, 100), nullptr, config) == FilterVerdict::too_long);
}

TEST_CASE("verdicts match the direct rule evaluation on random pairs") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::size_t> len(1, 300);
  const FilterConfig config;
  for (int round = 0; round < 500; ++round) {
    const std::size_t a = len(rng), b = len(rng);
    const BitextPair pair = pair_of_lengths(a, b);
    const FilterVerdict got = filter_pair(pair, nullptr, config);
    FilterVerdict expected = FilterVerdict::keep;
    if (std::max(a, b) > 250)
      expected = FilterVerdict::too_long;
    else if (static_cast<double>(std::max(a, b)) / static_cast<double>(std::min(a, b)) > 1.5)
      expected = FilterVerdict::ratio;
    CHECK(got == expected);
  }
}

TEST_CASE("language id rejections fire per side") {
  std::map<std::string, std::vector<std::string>> corpus;
  corpus["en"] = ts::make_sentences(ts::english_words(), 400, 71);
  corpus["fi"] = ts::make_sentences(ts::finnish_words(), 400, 72);
  const LangIdModel model = train_langid(corpus);
  FilterConfig config;
  config.expected_source_lang = "en";
  config.expected_target_lang = "fi";

  const std::string en = "the people said that the water was over the house and they would know";
  const std::string fi = "ja hän oli siellä kun tämä kaupunki oli vielä pieni mutta kaunis";
  CHECK(filter_pair(make_bitext_pair(en, fi), &model, config) == FilterVerdict::keep);
  CHECK(filter_pair(make_bitext_pair(fi, fi), &model, config) == FilterVerdict::langid_source);
  CHECK(filter_pair(make_bitext_pair(en, en), &model, config) == FilterVerdict::langid_target);
}

TEST_CASE("filter_corpus counts planted violations exactly") {
  std::map<std::string, std::vector<std::string>> langid_corpus;
  langid_corpus["en"] = ts::make_sentences(ts::english_words(), 400, 81);
  langid_corpus["fi"] = ts::make_sentences(ts::finnish_words(), 400, 82);
  const LangIdModel model = train_langid(langid_corpus);
  FilterConfig config;
  config.expected_source_lang = "en";
  config.expected_target_lang = "fi";

  std::vector<BitextPair> stream;
  const auto en = ts::make_sentences(ts::english_words(), 1000, 84, 10, 14);
  const auto fi = ts::make_sentences(ts::finnish_words(), 1000, 85, 10, 14);
  for (std::size_t i = 0; i < 1000; ++i) stream.push_back(make_bitext_pair(en[i], fi[i]));
  // Plant violations on disjoint index ranges.
  for (std::size_t i = 0; i < 10; ++i) {
    stream[i] = pair_of_lengths(251 + i, 251 + i);  // too_long
  }
  for (std::size_t i = 10; i < 30; ++i) {
    stream[i] = make_bitext_pair(en[i], "yksi");  // ratio >= 10/1
  }
  for (std::size_t i = 30; i < 35; ++i) {
    stream[i] = make_bitext_pair(fi[i], fi[i]);  // langid_source
  }

  std::vector<BitextPair> kept;
  const FilterReport report =
      filter_corpus(stream, &model, config, [&](const BitextPair& p) { kept.push_back(p); });
  CHECK(report.total_in == 1000);
  CHECK(report.rejected_too_long == 10);
  CHECK(report.rejected_ratio == 20);
  CHECK(report.rejected_langid_source == 5);
  CHECK(report.rejected_langid_target == 0);
  CHECK(report.total_out == 965);
  CHECK(kept.size() == 965);
  CHECK(report.total_in == report.total_out + report.rejected_too_long + report.rejected_ratio +
                               report.rejected_langid_source + report.rejected_langid_target);
  // Order preserved: kept pairs appear in stream order.
  CHECK(kept.front() == stream[35]);
}

TEST_CASE("empty stream reports all zero") {
  const FilterReport report = filter_corpus({}, nullptr, FilterConfig{}, nullptr);
  CHECK(report.total_in == 0);
  CHECK(report.total_out == 0);
}

TEST_CASE("identical short pair in expected languages keeps") {
  std::map<std::string, std::vector<std::string>> corpus;
  corpus["en"] = ts::make_sentences(ts::english_words(), 400, 91);
  corpus["es"] = ts::make_sentences(ts::spanish_words(), 400, 92);
  const LangIdModel model = train_langid(corpus);
  FilterConfig config;
  config.expected_source_lang = "en";
  config.expected_target_lang = "en";
  const std::string s = "the people know the water and the house over there now";
  CHECK(filter_pair(make_bitext_pair(s, s), &model, config) == FilterVerdict::keep);
}
