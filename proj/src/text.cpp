#include "artifact/text.hpp"

#include <algorithm>

#include "artifact/error.hpp"
#include "artifact/utf8.hpp"

namespace artifact::text {

bool is_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
    case 0x20: case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return (cp >= 0x2000 && cp <= 0x200A);
  }
}

bool is_ascii_punct(char32_t cp) {
  // Matches string.punctuation: !"#$%&'()*+,-./:;<=>?@[\]^_`{|}~
  return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
         (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    // ASCII P* categories; $ + < = > ^ ` | ~ are symbols, kept out here.
    switch (cp) {
      case U'$': case U'+': case U'<': case U'=': case U'>':
      case U'^': case U'`': case U'|': case U'~':
        return false;
      default:
        return is_ascii_punct(cp);
    }
  }
  switch (cp) {
    case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB: case 0xBF:
    case 0x37E: case 0x387: case 0x589: case 0x5C0: case 0x5C3:
    case 0x60C: case 0x61B: case 0x61F: case 0x6D4:
    case 0x964: case 0x965: case 0x970:
    case 0x10FB: case 0x1400: case 0x166E:
    case 0x3001: case 0x3002: case 0x3003: case 0x303D: case 0x30FB:
    case 0xFE63: case 0xFE68:
      return true;
    default:
      break;
  }
  // General punctuation (minus spaces/formats), CJK brackets, fullwidth
  // and halfwidth punctuation blocks.
  if (cp >= 0x2010 && cp <= 0x2027) return true;
  if (cp >= 0x2030 && cp <= 0x205E) return true;
  if (cp >= 0x3008 && cp <= 0x3020) return true;
  if (cp >= 0xFE50 && cp <= 0xFE61) return true;
  if (cp >= 0xFF01 && cp <= 0xFF0F) return true;
  if (cp >= 0xFF1A && cp <= 0xFF20) return true;
  if (cp >= 0xFF3B && cp <= 0xFF40) return true;
  if (cp >= 0xFF5B && cp <= 0xFF65) return true;
  return false;
}

bool is_cjk(char32_t cp) {
  if (cp >= 0x4E00 && cp <= 0x9FFF) return true;    // CJK unified
  if (cp >= 0x3400 && cp <= 0x4DBF) return true;    // extension A
  if (cp >= 0xF900 && cp <= 0xFAFF) return true;    // compatibility
  if (cp >= 0x3040 && cp <= 0x309F) return true;    // hiragana
  if (cp >= 0x30A0 && cp <= 0x30FF) return true;    // katakana
  if (cp >= 0x20000 && cp <= 0x2A6DF) return true;  // extension B
  return false;
}

char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1
  if (cp >= 0x100 && cp <= 0x137) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp == 0x178) return 0xFF;  // Y with diaeresis
  if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;  // Greek
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;  // Cyrillic supplements
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;  // Cyrillic
  if (cp >= 0xFF21 && cp <= 0xFF3A) return cp + 0x20;  // fullwidth A-Z
  return cp;
}

std::string fold_case(std::string_view text) {
  const auto decoded = utf8::decode(text);
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : decoded.code_points) out += utf8::encode(to_lower(cp));
  return out;
}

std::string trim(std::string_view text) {
  const auto decoded = utf8::decode(text);
  const auto& cps = decoded.code_points;
  std::size_t begin = 0, end = cps.size();
  while (begin < end && is_space(cps[begin])) ++begin;
  while (end > begin && is_space(cps[end - 1])) --end;
  return std::string(
      text.substr(decoded.byte_offsets[begin], decoded.byte_offsets[end] - decoded.byte_offsets[begin]));
}

std::vector<std::string> ws_tokens(std::string_view text) {
  const auto decoded = utf8::decode(text);
  const auto& cps = decoded.code_points;
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_space(cps[i])) ++i;
    const std::size_t start = i;
    while (i < cps.size() && !is_space(cps[i])) ++i;
    if (i > start) {
      tokens.emplace_back(text.substr(decoded.byte_offsets[start],
                                      decoded.byte_offsets[i] - decoded.byte_offsets[start]));
    }
  }
  return tokens;
}

std::string tsv_escape(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string tsv_unescape(std::string_view escaped) {
  std::string out;
  out.reserve(escaped.size());
  for (std::size_t i = 0; i < escaped.size(); ++i) {
    if (escaped[i] != '\\') {
      out.push_back(escaped[i]);
      continue;
    }
    if (i + 1 >= escaped.size()) throw ValidationError("dangling escape in TSV field");
    switch (escaped[++i]) {
      case '\\': out.push_back('\\'); break;
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default: throw ValidationError("unknown escape in TSV field");
    }
  }
  return out;
}

std::vector<std::string> split(std::string_view str, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = str.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(str.substr(start));
      return parts;
    }
    parts.emplace_back(str.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace artifact::text
