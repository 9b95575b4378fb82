#include "artifact/manifest.hpp"

#include <openssl/evp.h>

#include "json.hpp"

#include "artifact/datamodel.hpp"
#include "artifact/error.hpp"

namespace artifact {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_file_bytes(path)); }

void RunManifest::add_input(const std::string& path) {
  inputs.emplace_back(path, sha256_file(path));
}

void RunManifest::add_output(const std::string& path) {
  outputs.emplace_back(path, sha256_file(path));
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["type"] = "run_manifest";
  j["toolkit_version"] = kToolkitVersion;
  j["subcommand"] = subcommand;
  j["config"] = config;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& [path, digest] : inputs)
    j["inputs"].push_back({{"path", path}, {"sha256", digest}});
  j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& [path, digest] : outputs)
    j["outputs"].push_back({{"path", path}, {"sha256", digest}});
  j["duration_seconds"] = duration_seconds;
  return j.dump(2);
}

void RunManifest::write_beside(const std::string& primary_output) const {
  atomic_write_file(primary_output + ".manifest.json", to_json() + "\n");
}

}  // namespace artifact
