#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace artifact {

struct Direction {
  std::string source_lang;
  std::string target_lang;

  bool operator==(const Direction&) const = default;
  auto operator<=>(const Direction&) const = default;
  std::string to_string() const { return source_lang + ">" + target_lang; }
};

// External translator decoding settings are recorded verbatim as run
// metadata; the toolkit cannot verify a decoder's internals.
struct BackendConfig {
  std::string command;     // template with {src}/{tgt} placeholders
  std::string table_path;  // precomputed translation table, alternative to command
  std::map<std::string, std::string> decoding_metadata;
  std::size_t batch_size = 64;
};

// Line-oriented protocol: n input texts produce n output texts, same
// order. Implementations must be deterministic for cache coherence.
class TranslationBackend {
 public:
  virtual ~TranslationBackend() = default;
  virtual std::vector<std::string> translate(const std::vector<std::string>& texts,
                                             const Direction& direction) = 0;
  virtual std::string name() const = 0;
};

// Runs the configured command with stdin/stdout redirection via files.
// Texts containing newlines are rejected up front: they would desync the
// line protocol.
class CommandBackend : public TranslationBackend {
 public:
  explicit CommandBackend(std::string command_template);
  std::vector<std::string> translate(const std::vector<std::string>& texts,
                                     const Direction& direction) override;
  std::string name() const override { return "cmd:" + command_template_; }

 private:
  std::string command_template_;
};

// Looks translations up in a 3-column TSV table (direction as src>tgt,
// source, translation). A missing entry aborts, naming the text's batch
// index.
class TableBackend : public TranslationBackend {
 public:
  explicit TableBackend(const std::string& table_path);
  std::vector<std::string> translate(const std::vector<std::string>& texts,
                                     const Direction& direction) override;
  std::string name() const override { return "table:" + path_; }

 private:
  std::string path_;
  std::map<std::pair<Direction, std::string>, std::string> table_;
};

// Stub backends for testing and dry runs.
class EchoBackend : public TranslationBackend {
 public:
  std::vector<std::string> translate(const std::vector<std::string>& texts,
                                     const Direction&) override {
    return texts;
  }
  std::string name() const override { return "echo"; }
};

// Reverses word order; involutive, so a round trip restores the input.
class ReverseWordsBackend : public TranslationBackend {
 public:
  std::vector<std::string> translate(const std::vector<std::string>& texts,
                                     const Direction&) override;
  std::string name() const override { return "reverse-words"; }
};

// Rewrites a deterministic fraction of tokens into novel sentence-keyed
// forms. Because the key covers the whole text, the same word is rendered
// differently in different fields, the way independent translation does.
class PerturbBackend : public TranslationBackend {
 public:
  explicit PerturbBackend(double fraction = 0.5, std::uint64_t seed = 1)
      : fraction_(fraction), seed_(seed) {}
  std::vector<std::string> translate(const std::vector<std::string>& texts,
                                     const Direction&) override;
  std::string name() const override { return "perturb"; }

 private:
  double fraction_;
  std::uint64_t seed_;
};

// Builds the configured external backend; exactly one of command or
// table_path must be set.
std::unique_ptr<TranslationBackend> make_backend(const BackendConfig& config);

// Parses a backend spec string: "echo", "reverse-words",
// "perturb[:fraction[:seed]]", "cmd:<template>", "table:<path>".
std::unique_ptr<TranslationBackend> make_backend(const std::string& spec);

// Exact-match (text, direction) -> translation store with an append-only
// 3-column TSV journal (direction, source, translation). Keys are
// normalized by stripping trailing newlines only. An entry, once present,
// is never overwritten.
class TranslationCache {
 public:
  TranslationCache() = default;

  // Opens (and creates if missing) a journal file; existing entries are
  // loaded, first occurrence winning.
  static TranslationCache open(const std::string& journal_path);
  static std::string normalize_key(std::string_view text);

  std::optional<std::string> lookup(const std::string& text, const Direction& direction) const;
  // Inserts and journals; returns false if the key already existed.
  bool insert(const std::string& text, const Direction& direction, const std::string& translation);

  std::size_t size() const { return entries_.size(); }
  const std::string& journal_path() const { return journal_path_; }

 private:
  std::string journal_path_;  // empty for in-memory caches
  std::map<std::pair<Direction, std::string>, std::string> entries_;

  void append_journal(const Direction& direction, const std::string& key,
                      const std::string& translation);
};

// Cache-backed batch translation. Misses go to the backend in first
// occurrence order, deduplicated; results are journaled per batch so an
// aborted run resumes from the cache. Duplicate inputs always receive
// identical outputs.
std::vector<std::string> cached_translate(const std::vector<std::string>& texts,
                                          const Direction& direction, TranslationBackend& backend,
                                          TranslationCache& cache,
                                          std::size_t batch_size = 64);

struct SelfcheckReport {
  struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
  };
  std::vector<Check> checks;
  bool ok() const;
  std::string to_json() const;
};

// Sends a canary batch and verifies arity, non-empty outputs and UTF-8
// validity.
SelfcheckReport backend_selfcheck(TranslationBackend& backend,
                                  const Direction& direction = {"en", "en"});

}  // namespace artifact
