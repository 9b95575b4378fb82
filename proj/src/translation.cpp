#include "artifact/translation.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unordered_map>

#include "json.hpp"

#include "artifact/datamodel.hpp"
#include "artifact/error.hpp"
#include "artifact/text.hpp"
#include "artifact/utf8.hpp"

namespace artifact {

namespace {

std::string substitute_direction(std::string templ, const Direction& direction) {
  auto replace_all = [](std::string& s, const std::string& from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
      s.replace(pos, from.size(), to);
      pos += to.size();
    }
  };
  replace_all(templ, "{src}", direction.source_lang);
  replace_all(templ, "{tgt}", direction.target_lang);
  return templ;
}

std::filesystem::path unique_temp_path(const std::string& tag) {
  static std::atomic<std::uint64_t> counter{0};
  return std::filesystem::temp_directory_path() /
         ("artifact-" + tag + "-" + std::to_string(::getpid()) + "-" +
          std::to_string(counter.fetch_add(1)));
}

}  // namespace

CommandBackend::CommandBackend(std::string command_template)
    : command_template_(std::move(command_template)) {}

std::vector<std::string> CommandBackend::translate(const std::vector<std::string>& texts,
                                                   const Direction& direction) {
  for (std::size_t i = 0; i < texts.size(); ++i)
    if (texts[i].find('\n') != std::string::npos)
      throw ValidationError("text at index " + std::to_string(i) +
                            " contains a newline; the line protocol cannot carry it");
  const auto in_path = unique_temp_path("in");
  const auto out_path = unique_temp_path("out");
  {
    std::ofstream in(in_path, std::ios::binary);
    for (const std::string& t : texts) in << t << '\n';
  }
  const std::string cmd = substitute_direction(command_template_, direction) + " < " +
                          in_path.string() + " > " + out_path.string();
  const int raw = std::system(cmd.c_str());
  const int status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::vector<std::string> out;
  if (status == 0) {
    std::ifstream result(out_path, std::ios::binary);
    std::string line;
    while (std::getline(result, line)) out.push_back(line);
  }
  std::filesystem::remove(in_path);
  std::filesystem::remove(out_path);
  if (status != 0)
    throw BackendError("backend command failed with status " + std::to_string(status) + ": " + cmd);
  if (out.size() != texts.size())
    throw BackendError("backend returned " + std::to_string(out.size()) + " lines for " +
                       std::to_string(texts.size()) + " inputs");
  return out;
}

namespace {

Direction parse_direction(const std::string& field, const std::string& where) {
  const auto langs = text::split(field, '>');
  if (langs.size() != 2 || langs[0].empty() || langs[1].empty())
    throw ValidationError(where + ": malformed direction \"" + field + "\"; expected src>tgt");
  return {langs[0], langs[1]};
}

}  // namespace

TableBackend::TableBackend(const std::string& table_path) : path_(table_path) {
  std::ifstream in(table_path);
  if (!in) throw IoError("cannot read translation table " + table_path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = table_path + ":" + std::to_string(line_no);
    const auto fields = text::split(line, '\t');
    if (fields.size() != 3)
      throw ValidationError(where + ": expected 3 tab-separated fields");
    table_.emplace(std::make_pair(parse_direction(fields[0], where), text::tsv_unescape(fields[1])),
                   text::tsv_unescape(fields[2]));
  }
}

std::vector<std::string> TableBackend::translate(const std::vector<std::string>& texts,
                                                 const Direction& direction) {
  std::vector<std::string> out;
  out.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto it = table_.find({direction, texts[i]});
    if (it == table_.end())
      throw BackendError("translation table has no entry for text at index " + std::to_string(i) +
                         " (" + direction.to_string() + "): \"" + texts[i] + "\"");
    out.push_back(it->second);
  }
  return out;
}

std::vector<std::string> ReverseWordsBackend::translate(const std::vector<std::string>& texts,
                                                        const Direction&) {
  std::vector<std::string> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) {
    auto tokens = text::ws_tokens(t);
    std::reverse(tokens.begin(), tokens.end());
    std::string joined;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) joined.push_back(' ');
      joined += tokens[i];
    }
    out.push_back(std::move(joined));
  }
  return out;
}

namespace {

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::vector<std::string> PerturbBackend::translate(const std::vector<std::string>& texts,
                                                   const Direction&) {
  std::vector<std::string> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) {
    const std::uint64_t sentence_key = fnv1a(t, seed_);
    const auto tokens = text::ws_tokens(t);
    std::string joined;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) joined.push_back(' ');
      const std::uint64_t h = fnv1a(tokens[i] + "#" + std::to_string(i), sentence_key);
      const double u = static_cast<double>(h % 1000003) / 1000003.0;
      if (u < fraction_)
        joined += tokens[i] + "~" + std::to_string(sentence_key % 9973);
      else
        joined += tokens[i];
    }
    out.push_back(std::move(joined));
  }
  return out;
}

std::unique_ptr<TranslationBackend> make_backend(const BackendConfig& config) {
  const bool has_command = !config.command.empty();
  const bool has_table = !config.table_path.empty();
  if (has_command == has_table)
    throw ValidationError("backend config must set exactly one of command or table");
  if (has_command) return std::make_unique<CommandBackend>(config.command);
  return std::make_unique<TableBackend>(config.table_path);
}

std::unique_ptr<TranslationBackend> make_backend(const std::string& spec) {
  if (spec == "echo") return std::make_unique<EchoBackend>();
  if (spec == "reverse-words") return std::make_unique<ReverseWordsBackend>();
  if (spec == "perturb" || spec.starts_with("perturb:")) {
    double fraction = 0.5;
    std::uint64_t seed = 1;
    if (spec.size() > 8) {
      const auto parts = text::split(spec.substr(8), ':');
      if (!parts.empty() && !parts[0].empty()) fraction = std::stod(parts[0]);
      if (parts.size() > 1 && !parts[1].empty()) seed = std::stoull(parts[1]);
    }
    return std::make_unique<PerturbBackend>(fraction, seed);
  }
  if (spec.starts_with("cmd:")) {
    BackendConfig config;
    config.command = spec.substr(4);
    return make_backend(config);
  }
  if (spec.starts_with("table:")) {
    BackendConfig config;
    config.table_path = spec.substr(6);
    return make_backend(config);
  }
  throw ValidationError("unknown backend spec \"" + spec +
                        "\"; expected echo, reverse-words, perturb[:f[:seed]], cmd:..., table:...");
}

std::string TranslationCache::normalize_key(std::string_view txt) {
  std::string s(txt);
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

TranslationCache TranslationCache::open(const std::string& journal_path) {
  TranslationCache cache;
  cache.journal_path_ = journal_path;
  std::ifstream in(journal_path);
  if (in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const std::string where = journal_path + ":" + std::to_string(line_no);
      const auto fields = text::split(line, '\t');
      if (fields.size() != 3)
        throw ValidationError(where + ": expected 3 tab-separated fields");
      // First occurrence wins: the journal is append-only.
      cache.entries_.emplace(
          std::make_pair(parse_direction(fields[0], where), text::tsv_unescape(fields[1])),
          text::tsv_unescape(fields[2]));
    }
  }
  return cache;
}

std::optional<std::string> TranslationCache::lookup(const std::string& txt,
                                                    const Direction& direction) const {
  const auto it = entries_.find({direction, normalize_key(txt)});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool TranslationCache::insert(const std::string& txt, const Direction& direction,
                              const std::string& translation) {
  const std::string key = normalize_key(txt);
  const auto [it, inserted] = entries_.emplace(std::make_pair(direction, key), translation);
  if (inserted && !journal_path_.empty()) append_journal(direction, key, translation);
  return inserted;
}

void TranslationCache::append_journal(const Direction& direction, const std::string& key,
                                      const std::string& translation) {
  std::ofstream out(journal_path_, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot append to cache journal " + journal_path_);
  out << direction.to_string() << '\t' << text::tsv_escape(key) << '\t'
      << text::tsv_escape(translation) << '\n';
  out.flush();
  if (!out) throw IoError("short write to cache journal " + journal_path_);
}

std::vector<std::string> cached_translate(const std::vector<std::string>& texts,
                                          const Direction& direction, TranslationBackend& backend,
                                          TranslationCache& cache, std::size_t batch_size) {
  if (batch_size == 0) batch_size = texts.size() + 1;
  // Misses in first-occurrence order, deduplicated on the normalized key.
  std::vector<std::string> misses;
  std::unordered_map<std::string, std::size_t> miss_index;
  for (const std::string& txt : texts) {
    const std::string key = TranslationCache::normalize_key(txt);
    if (cache.lookup(key, direction) || miss_index.count(key)) continue;
    miss_index.emplace(key, misses.size());
    misses.push_back(key);
  }
  for (std::size_t begin = 0; begin < misses.size(); begin += batch_size) {
    const std::size_t end = std::min(begin + batch_size, misses.size());
    const std::vector<std::string> batch(misses.begin() + begin, misses.begin() + end);
    std::vector<std::string> translated;
    try {
      translated = backend.translate(batch, direction);
    } catch (const BackendError& e) {
      throw BackendError(std::string(e.what()) + " (first untranslated input index " +
                         std::to_string(begin) + ")");
    }
    for (std::size_t i = 0; i < batch.size(); ++i)
      cache.insert(batch[i], direction, translated[i]);
  }
  std::vector<std::string> out;
  out.reserve(texts.size());
  for (const std::string& txt : texts) {
    auto hit = cache.lookup(txt, direction);
    if (!hit)
      throw BackendError("translation missing after backend run for text \"" + txt + "\"");
    out.push_back(std::move(*hit));
  }
  return out;
}

bool SelfcheckReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string SelfcheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["type"] = "backend_selfcheck";
  j["ok"] = ok();
  j["checks"] = nlohmann::ordered_json::array();
  for (const Check& c : checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["passed"] = c.passed;
    if (!c.detail.empty()) jc["detail"] = c.detail;
    j["checks"].push_back(std::move(jc));
  }
  return j.dump(2);
}

SelfcheckReport backend_selfcheck(TranslationBackend& backend, const Direction& direction) {
  const std::vector<std::string> canary = {"hello world", "a b c d", "nums 1 2 3",
                                           "ääni tämä käy"};
  SelfcheckReport report;
  std::vector<std::string> out;
  try {
    out = backend.translate(canary, direction);
    report.checks.push_back({"arity", out.size() == canary.size(),
                             std::to_string(out.size()) + " outputs for " +
                                 std::to_string(canary.size()) + " inputs"});
  } catch (const Error& e) {
    report.checks.push_back({"arity", false, e.what()});
    return report;
  }
  bool nonempty = true, valid_utf8 = true;
  std::string detail_empty, detail_utf8;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].empty()) {
      nonempty = false;
      detail_empty = "empty output at index " + std::to_string(i);
    }
    if (!utf8::is_valid(out[i])) {
      valid_utf8 = false;
      detail_utf8 = "invalid UTF-8 at index " + std::to_string(i);
    }
  }
  report.checks.push_back({"non_empty", nonempty, detail_empty});
  report.checks.push_back({"utf8", valid_utf8, detail_utf8});
  return report;
}

}  // namespace artifact
