#include "doctest.h"

#include <random>
#include <set>

#include "artifact/error.hpp"
#include "artifact/stats.hpp"
#include "artifact/text.hpp"
#include "artifact/translation.hpp"
#include "artifact/variant.hpp"
#include "support/synthetic.hpp"

using namespace artifact;
namespace ts = test_support;

TEST_CASE("lexical overlap hand cases") {
  CHECK(lexical_overlap("the cat sat", "the cat sat") == doctest::Approx(1.0));
  CHECK(lexical_overlap("alpha beta", "gamma delta") == doctest::Approx(0.0));
  CHECK(lexical_overlap("the cat sat", "the cat ran") == doctest::Approx(2.0 / 3.0));
  // Case folding merges types.
  CHECK(lexical_overlap("The Cat", "the cat") == doctest::Approx(1.0));
  CHECK_THROWS_AS(lexical_overlap("x", "  "), ValidationError);
}

TEST_CASE("overlap is 1 exactly when hypothesis types are contained") {
  std::mt19937 rng(7);
  const auto& words = ts::english_words();
  std::uniform_int_distribution<std::size_t> w(0, words.size() - 1);
  for (int round = 0; round < 200; ++round) {
    std::string premise, hypothesis;
    for (int i = 0; i < 8; ++i) premise += (i ? " " : "") + words[w(rng)];
    for (int i = 0; i < 4; ++i) hypothesis += (i ? " " : "") + words[w(rng)];
    const double v = lexical_overlap(premise, hypothesis);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    // Containment check via the tokenizer the measure uses.
    bool contained = true;
    std::set<std::string> ptypes;
    for (const auto& t : token_surfaces(premise)) ptypes.insert(text::fold_case(t));
    for (const auto& t : token_surfaces(hypothesis))
      if (!ptypes.count(text::fold_case(t))) contained = false;
    CHECK((v == 1.0) == contained);
  }
}

TEST_CASE("overlap report: dataset against itself has zero deltas") {
  const auto dataset = ts::make_nli_fixture(60, 11);
  const auto report = overlap_report({{"a", dataset}, {"b", dataset}});
  REQUIRE(report.datasets.size() == 2);
  CHECK(report.mean_deltas[0][1] == doctest::Approx(0.0));
  CHECK(report.mean_deltas[1][0] == doctest::Approx(0.0));

  // Cell counts partition the dataset.
  std::size_t total = 0;
  for (const auto& [key, cell] : report.datasets[0].cells) total += cell.count;
  CHECK(total == dataset.size());
}

TEST_CASE("perturbing stub translation strictly lowers hypothesis overlap") {
  const auto dataset = ts::make_nli_fixture(200, 13);
  TranslationCache cache_echo, cache_perturb;
  EchoBackend echo;
  PerturbBackend perturb(0.5, 3);
  const PipelineSpec spec = parse_pipeline_spec("BT-FI", "en");
  const auto identity_variant = build_nli_variant(dataset, spec, echo, cache_echo);
  const auto perturbed_variant = build_nli_variant(dataset, spec, perturb, cache_perturb);
  const auto report = overlap_report(
      {{"identity", identity_variant}, {"perturbed", perturbed_variant}});
  CHECK(report.datasets[0].overall_mean > report.datasets[1].overall_mean);
}

TEST_CASE("class distribution counts argmaxes with low-index ties") {
  std::vector<PredictionRecord> predictions;
  for (int i = 0; i < 4; ++i) {
    PredictionRecord r;
    r.example_id = "e" + std::to_string(i);
    r.seed = 0;
    r.logits = {1.0, 1.0, 1.0};  // all ties -> class 0
    predictions.push_back(std::move(r));
  }
  const auto dist = class_distribution(predictions, default_nli_labels());
  CHECK(dist.probabilities == std::vector<double>{1.0, 0.0, 0.0});
  CHECK(dist.support == 4);
  CHECK_THROWS_AS(class_distribution({}, default_nli_labels()), ValidationError);
}

TEST_CASE("planted argmaxes produce the planted distribution") {
  std::vector<PredictionRecord> predictions;
  int counts[3] = {100, 100, 100};
  int id = 0;
  for (int c = 0; c < 3; ++c) {
    for (int k = 0; k < counts[c]; ++k) {
      PredictionRecord r;
      r.example_id = "e" + std::to_string(id++);
      r.seed = 0;
      r.logits = {0.0, 0.0, 0.0};
      r.logits[static_cast<std::size_t>(c)] = 2.0;
      predictions.push_back(std::move(r));
    }
  }
  const auto dist = class_distribution(predictions, default_nli_labels());
  for (double p : dist.probabilities) CHECK(p == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("class distribution is invariant to constant logit shifts") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<PredictionRecord> base;
  for (int i = 0; i < 50; ++i) {
    PredictionRecord r;
    r.example_id = "e" + std::to_string(i);
    r.seed = 0;
    r.logits = {u(rng), u(rng), u(rng)};
    base.push_back(std::move(r));
  }
  auto shifted = base;
  for (auto& r : shifted)
    for (double& v : r.logits) v += 2.5;
  const auto a = class_distribution(base, default_nli_labels());
  const auto b = class_distribution(shifted, default_nli_labels());
  CHECK(a.probabilities == b.probabilities);
}

TEST_CASE("length stats hand cases and planted groups") {
  std::vector<NliExample> dataset;
  NliExample e;
  e.id = "a";
  e.premise = "one two three four";
  e.hypothesis = "one two";
  e.label = NliLabel::entailment;
  e.language = "en";
  e.provenance = Provenance::original;
  dataset.push_back(e);

  auto stats = length_stats(dataset);
  const auto& cell = stats.cells.at({"premise", "entailment", "original"});
  CHECK(cell.count == 1);
  CHECK(cell.mean == doctest::Approx(4.0));
  CHECK(cell.stddev == doctest::Approx(0.0));
  CHECK(cell.p50 == 4);

  // Two premises of lengths 4 and 6 under one group average to 5.
  NliExample e2 = e;
  e2.id = "b";
  e2.premise = "one two three four five six";
  dataset.push_back(e2);
  stats = length_stats(dataset);
  CHECK(stats.cells.at({"premise", "entailment", "original"}).mean == doctest::Approx(5.0));

  // Label-correlated planted lengths come back per group.
  NliExample n = e;
  n.id = "c";
  n.label = NliLabel::neutral;
  n.premise = "a b c d e f g h i j";
  dataset.push_back(n);
  stats = length_stats(dataset);
  CHECK(stats.cells.at({"premise", "neutral", "original"}).mean == doctest::Approx(10.0));
}
