#pragma once

#include <map>
#include <string>
#include <vector>

namespace artifact {

inline constexpr const char* kToolkitVersion = "0.1.0";

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

// One manifest per CLI run, written beside the primary output. Digests
// cover the exact bytes read and written.
struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> config;  // resolved flag -> value
  std::vector<std::pair<std::string, std::string>> inputs;   // path, sha256
  std::vector<std::pair<std::string, std::string>> outputs;  // path, sha256
  double duration_seconds = 0.0;

  void add_input(const std::string& path);
  void add_output(const std::string& path);
  std::string to_json() const;
  // Writes to <primary_output>.manifest.json.
  void write_beside(const std::string& primary_output) const;
};

}  // namespace artifact
