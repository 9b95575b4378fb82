#pragma once

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include "artifact/datamodel.hpp"
#include "artifact/manifest.hpp"
#include "artifact/stats.hpp"

namespace artifact::cli {

struct GlobalOptions {
  int workers = 0;
};

// Wall-clock + manifest bookkeeping for one subcommand run. Inputs are
// digested as they are declared, outputs after they exist; the manifest
// lands beside the primary output.
class RunScope {
 public:
  RunScope(std::string subcommand)
      : start_(std::chrono::steady_clock::now()) {
    manifest_.subcommand = std::move(subcommand);
  }

  void config(const std::string& key, const std::string& value) {
    manifest_.config[key] = value;
  }
  void config_if(const std::string& key, const std::string& value) {
    if (!value.empty()) manifest_.config[key] = value;
  }
  void input(const std::string& path) { manifest_.add_input(path); }
  void output(const std::string& path) { manifest_.add_output(path); }

  // Writes <primary>.manifest.json; call once everything is on disk.
  void finish(const std::string& primary_output) {
    manifest_.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    manifest_.write_beside(primary_output);
  }

 private:
  RunManifest manifest_;
  std::chrono::steady_clock::time_point start_;
};

// "entailment,neutral,contradiction" -> label vector.
std::vector<std::string> parse_labels(const std::string& spec);

// "entailment=0.333,neutral=0.333,contradiction=0.334" -> distribution
// over the given order; "uniform" spreads evenly.
ClassDistribution parse_target(const std::string& spec, const std::vector<std::string>& labels);

// name=path pairs from repeated --dataset flags.
std::pair<std::string, std::string> parse_named_path(const std::string& spec);

// Applies ARTIFACT_CACHE_DIR to relative cache paths.
std::string resolve_cache_path(const std::string& path);

// Loads a bitext from two line files or a TSV.
std::vector<BitextPair> load_bitext(const std::string& src_path, const std::string& tgt_path,
                                    const std::string& tsv_path);

}  // namespace artifact::cli
