#include "artifact/datamodel.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "artifact/error.hpp"
#include "artifact/text.hpp"
#include "artifact/utf8.hpp"

namespace artifact {

using ordered_json = nlohmann::ordered_json;

std::string to_string(NliLabel label) {
  switch (label) {
    case NliLabel::entailment: return "entailment";
    case NliLabel::neutral: return "neutral";
    case NliLabel::contradiction: return "contradiction";
  }
  throw ValidationError("unknown label enum value");
}

std::string to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::original: return "original";
    case Provenance::human_translated: return "human_translated";
    case Provenance::machine_translated: return "machine_translated";
    case Provenance::back_translated: return "back_translated";
  }
  throw ValidationError("unknown provenance enum value");
}

NliLabel nli_label_from_string(const std::string& s) {
  if (s == "entailment") return NliLabel::entailment;
  if (s == "neutral") return NliLabel::neutral;
  if (s == "contradiction") return NliLabel::contradiction;
  throw ValidationError("unknown label \"" + s + "\"");
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "original") return Provenance::original;
  if (s == "human_translated") return Provenance::human_translated;
  if (s == "machine_translated") return Provenance::machine_translated;
  if (s == "back_translated") return Provenance::back_translated;
  throw ValidationError("unknown provenance \"" + s + "\"");
}

Task task_from_string(const std::string& s) {
  if (s == "nli") return Task::nli;
  if (s == "qa") return Task::qa;
  throw ValidationError("unknown task \"" + s + "\"");
}

const std::vector<std::string>& default_nli_labels() {
  static const std::vector<std::string> labels = {"entailment", "neutral", "contradiction"};
  return labels;
}

BitextPair make_bitext_pair(std::string source, std::string target) {
  BitextPair pair;
  pair.source_tokens = text::ws_tokens(source);
  pair.target_tokens = text::ws_tokens(target);
  pair.source = std::move(source);
  pair.target = std::move(target);
  return pair;
}

void Alignment::normalize() {
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
}

bool Alignment::has_link_for_src(std::size_t i) const {
  return std::any_of(links.begin(), links.end(), [&](const AlignLink& l) { return l.src == i; });
}

bool Alignment::has_link_for_tgt(std::size_t j) const {
  return std::any_of(links.begin(), links.end(), [&](const AlignLink& l) { return l.tgt == j; });
}

void validate(const NliExample& example) {
  if (example.id.empty()) throw ValidationError("NLI example with empty id");
  if (!utf8::is_valid(example.premise) || !utf8::is_valid(example.hypothesis))
    throw ValidationError("invalid UTF-8 in example " + example.id);
  if (text::trim(example.premise).empty())
    throw ValidationError("field premise empty after trimming in example " + example.id);
  if (text::trim(example.hypothesis).empty())
    throw ValidationError("field hypothesis empty after trimming in example " + example.id);
}

void validate(const QaExample& example) {
  if (example.id.empty()) throw ValidationError("QA example with empty id");
  if (!utf8::is_valid(example.context) || !utf8::is_valid(example.question))
    throw ValidationError("invalid UTF-8 in example " + example.id);
  if (example.answers.empty())
    throw ValidationError("field answers empty in example " + example.id);
  const std::size_t context_len = utf8::length(example.context);
  for (const QaAnswer& answer : example.answers) {
    if (answer.unmapped) continue;
    const std::size_t answer_len = utf8::length(answer.text);
    if (answer.char_start + answer_len > context_len)
      throw ValidationError("field char_start out of range in example " + example.id);
    if (utf8::substr(example.context, answer.char_start, answer_len) != answer.text)
      throw ValidationError("answer text does not match context at char_start in example " +
                            example.id);
  }
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return in;
}

ordered_json parse_line(const std::string& line, const std::string& path, std::size_t line_no) {
  ordered_json j = ordered_json::parse(line, nullptr, false);
  if (j.is_discarded())
    throw ValidationError(path + ":" + std::to_string(line_no) + ": malformed JSON");
  if (!j.is_object())
    throw ValidationError(path + ":" + std::to_string(line_no) + ": record is not a JSON object");
  return j;
}

std::string require_string(const ordered_json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError(where + ": missing field " + key);
  if (!j.at(key).is_string()) throw ValidationError(where + ": field " + key + " is not a string");
  return j.at(key).get<std::string>();
}

void reject_unknown_keys(const ordered_json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (const auto& item : j.items()) {
    const bool ok = std::any_of(known.begin(), known.end(),
                                [&](const char* k) { return item.key() == k; });
    if (!ok) throw ValidationError(where + ": unknown field " + item.key());
  }
}

template <typename Record>
void check_unique_ids(std::unordered_set<std::string>& seen, const Record& record,
                      const std::string& where) {
  if (!seen.insert(record.id).second)
    throw ValidationError(where + ": duplicate id " + record.id);
}

NliExample nli_from_json(const ordered_json& j, const std::string& where) {
  reject_unknown_keys(j, {"id", "premise", "hypothesis", "label", "language", "provenance", "genre"},
                      where);
  NliExample e;
  e.id = require_string(j, "id", where);
  e.premise = require_string(j, "premise", where);
  e.hypothesis = require_string(j, "hypothesis", where);
  e.label = nli_label_from_string(require_string(j, "label", where));
  e.language = require_string(j, "language", where);
  e.provenance = provenance_from_string(require_string(j, "provenance", where));
  if (j.contains("genre")) e.genre = require_string(j, "genre", where);
  return e;
}

QaExample qa_from_json(const ordered_json& j, const std::string& where) {
  reject_unknown_keys(j, {"id", "context", "question", "answers", "language", "provenance"}, where);
  QaExample e;
  e.id = require_string(j, "id", where);
  e.context = require_string(j, "context", where);
  e.question = require_string(j, "question", where);
  e.language = require_string(j, "language", where);
  e.provenance = provenance_from_string(require_string(j, "provenance", where));
  if (!j.contains("answers") || !j.at("answers").is_array())
    throw ValidationError(where + ": missing or non-array field answers");
  for (const auto& a : j.at("answers")) {
    reject_unknown_keys(a, {"text", "char_start", "unmapped"}, where);
    QaAnswer answer;
    answer.text = require_string(a, "text", where);
    if (!a.contains("char_start") || !a.at("char_start").is_number_unsigned())
      throw ValidationError(where + ": answer char_start missing or not a non-negative integer");
    answer.char_start = a.at("char_start").get<std::size_t>();
    if (a.contains("unmapped")) answer.unmapped = a.at("unmapped").get<bool>();
    e.answers.push_back(std::move(answer));
  }
  return e;
}

ordered_json nli_to_json(const NliExample& e) {
  ordered_json j;
  j["id"] = e.id;
  j["premise"] = e.premise;
  j["hypothesis"] = e.hypothesis;
  j["label"] = to_string(e.label);
  j["language"] = e.language;
  j["provenance"] = to_string(e.provenance);
  if (e.genre) j["genre"] = *e.genre;
  return j;
}

ordered_json qa_to_json(const QaExample& e) {
  ordered_json j;
  j["id"] = e.id;
  j["context"] = e.context;
  j["question"] = e.question;
  j["answers"] = ordered_json::array();
  for (const QaAnswer& a : e.answers) {
    ordered_json ja;
    ja["text"] = a.text;
    ja["char_start"] = a.char_start;
    if (a.unmapped) ja["unmapped"] = true;
    j["answers"].push_back(std::move(ja));
  }
  j["language"] = e.language;
  j["provenance"] = to_string(e.provenance);
  return j;
}

ordered_json prediction_to_json(const PredictionRecord& r) {
  ordered_json j;
  j["example_id"] = r.example_id;
  j["seed"] = r.seed;
  if (r.epoch) j["epoch"] = *r.epoch;
  if (r.answer) {
    ordered_json ja;
    ja["text"] = r.answer->text;
    ja["char_start"] = r.answer->char_start;
    ja["score"] = r.answer->score;
    j["answer"] = std::move(ja);
  } else {
    j["logits"] = r.logits;
  }
  return j;
}

}  // namespace

std::string to_json_line(const NliExample& example) { return nli_to_json(example).dump(); }
std::string to_json_line(const QaExample& example) { return qa_to_json(example).dump(); }
std::string to_json_line(const PredictionRecord& record) { return prediction_to_json(record).dump(); }

std::vector<NliExample> load_nli_dataset(const std::string& path) {
  auto in = open_input(path);
  std::vector<NliExample> dataset;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    NliExample e = nli_from_json(parse_line(line, path, line_no), where);
    validate(e);
    check_unique_ids(seen, e, where);
    dataset.push_back(std::move(e));
  }
  return dataset;
}

std::vector<QaExample> load_qa_dataset(const std::string& path) {
  auto in = open_input(path);
  std::vector<QaExample> dataset;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    QaExample e = qa_from_json(parse_line(line, path, line_no), where);
    validate(e);
    check_unique_ids(seen, e, where);
    dataset.push_back(std::move(e));
  }
  return dataset;
}

std::vector<NliExample> import_nli_dataset(const std::string& path, const ImportDefaults& defaults) {
  auto in = open_input(path);
  std::vector<NliExample> dataset;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    ordered_json j = parse_line(line, path, line_no);
    auto pick = [&](std::initializer_list<const char*> keys) -> std::optional<std::string> {
      for (const char* k : keys)
        if (j.contains(k) && j.at(k).is_string()) return j.at(k).get<std::string>();
      return std::nullopt;
    };
    NliExample e;
    e.id = pick({"id", "pairID", "pair_id"}).value_or("line" + std::to_string(line_no));
    auto premise = pick({"premise", "sentence1", "sentence1_tokenized"});
    auto hypothesis = pick({"hypothesis", "sentence2", "sentence2_tokenized"});
    auto label = pick({"label", "gold_label"});
    if (!premise || !hypothesis || !label)
      throw ValidationError(where + ": no premise/hypothesis/label fields under known aliases");
    e.premise = *premise;
    e.hypothesis = *hypothesis;
    e.label = nli_label_from_string(*label);
    e.language = pick({"language", "lang"}).value_or(defaults.language);
    if (auto p = pick({"provenance"}))
      e.provenance = provenance_from_string(*p);
    else
      e.provenance = defaults.provenance;
    if (auto g = pick({"genre"})) e.genre = *g;
    validate(e);
    check_unique_ids(seen, e, where);
    dataset.push_back(std::move(e));
  }
  return dataset;
}

std::vector<PredictionRecord> load_predictions(const std::string& path,
                                               const std::vector<std::string>& label_order) {
  auto in = open_input(path);
  std::vector<PredictionRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    ordered_json j = parse_line(line, path, line_no);
    reject_unknown_keys(j, {"example_id", "seed", "epoch", "logits", "answer"}, where);
    PredictionRecord r;
    r.example_id = require_string(j, "example_id", where);
    if (!j.contains("seed") || !j.at("seed").is_number_integer())
      throw ValidationError(where + ": missing integer field seed");
    r.seed = j.at("seed").get<int>();
    if (j.contains("epoch")) r.epoch = j.at("epoch").get<int>();
    const bool has_logits = j.contains("logits");
    const bool has_answer = j.contains("answer");
    if (has_logits == has_answer)
      throw ValidationError(where + ": record must carry exactly one of logits or answer");
    if (has_logits) {
      if (!j.at("logits").is_array())
        throw ValidationError(where + ": logits is not an array");
      for (const auto& v : j.at("logits")) {
        if (!v.is_number()) throw ValidationError(where + ": non-numeric logit");
        r.logits.push_back(v.get<double>());
      }
      if (r.logits.size() != label_order.size())
        throw ValidationError(where + ": logits arity " + std::to_string(r.logits.size()) +
                              " does not match " + std::to_string(label_order.size()) + " labels");
      for (double v : r.logits)
        if (!std::isfinite(v)) throw ValidationError(where + ": non-finite logit");
    } else {
      const auto& a = j.at("answer");
      reject_unknown_keys(a, {"text", "char_start", "score"}, where);
      PredictedAnswer answer;
      answer.text = require_string(a, "text", where);
      answer.char_start = a.at("char_start").get<std::size_t>();
      answer.score = a.at("score").get<double>();
      if (!std::isfinite(answer.score)) throw ValidationError(where + ": non-finite answer score");
      r.answer = std::move(answer);
    }
    const std::string key = r.example_id + "\x1f" + std::to_string(r.seed);
    if (!seen.insert(key).second)
      throw ValidationError(where + ": duplicate (example_id, seed) = (" + r.example_id + ", " +
                            std::to_string(r.seed) + ")");
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

template <typename Record>
std::string dataset_to_bytes(const std::vector<Record>& dataset) {
  std::string out;
  for (const Record& r : dataset) {
    out += to_json_line(r);
    out.push_back('\n');
  }
  return out;
}

}  // namespace

void write_nli_dataset(const std::vector<NliExample>& dataset, const std::string& path) {
  for (const NliExample& e : dataset) validate(e);
  atomic_write_file(path, dataset_to_bytes(dataset));
}

void write_qa_dataset(const std::vector<QaExample>& dataset, const std::string& path) {
  for (const QaExample& e : dataset) validate(e);
  atomic_write_file(path, dataset_to_bytes(dataset));
}

void write_predictions(const std::vector<PredictionRecord>& records, const std::string& path) {
  atomic_write_file(path, dataset_to_bytes(records));
}

std::string to_pharaoh(const Alignment& alignment) {
  std::string out;
  for (std::size_t k = 0; k < alignment.links.size(); ++k) {
    if (k) out.push_back(' ');
    out += std::to_string(alignment.links[k].src);
    out.push_back('-');
    out += std::to_string(alignment.links[k].tgt);
  }
  return out;
}

Alignment pharaoh_from_line(const std::string& line, std::size_t pair_index) {
  Alignment alignment;
  alignment.pair_index = pair_index;
  for (const std::string& tok : text::ws_tokens(line)) {
    const std::size_t dash = tok.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 >= tok.size())
      throw ValidationError("malformed alignment link \"" + tok + "\"");
    try {
      alignment.links.push_back(
          {std::stoul(tok.substr(0, dash)), std::stoul(tok.substr(dash + 1))});
    } catch (const std::exception&) {
      throw ValidationError("malformed alignment link \"" + tok + "\"");
    }
  }
  alignment.normalize();
  return alignment;
}

std::vector<Alignment> load_pharaoh(const std::string& path) {
  auto in = open_input(path);
  std::vector<Alignment> alignments;
  std::string line;
  while (std::getline(in, line)) alignments.push_back(pharaoh_from_line(line, alignments.size()));
  return alignments;
}

void write_pharaoh(const std::vector<Alignment>& alignments, const std::string& path) {
  std::string out;
  for (const Alignment& a : alignments) {
    out += to_pharaoh(a);
    out.push_back('\n');
  }
  atomic_write_file(path, out);
}

std::vector<std::string> load_lines(const std::string& path) {
  auto in = open_input(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void write_lines(const std::vector<std::string>& lines, const std::string& path) {
  std::string out;
  for (const std::string& line : lines) {
    out += line;
    out.push_back('\n');
  }
  atomic_write_file(path, out);
}

std::string read_file_bytes(const std::string& path) {
  auto in = open_input(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path dir = target.parent_path().empty() ? fs::path(".") : target.parent_path();
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path tmp = dir / (target.filename().string() + ".tmp." +
                              std::to_string(::getpid()) + "." +
                              std::to_string(reinterpret_cast<std::uintptr_t>(&content) % 100000));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("short write to " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
  }
}

}  // namespace artifact
