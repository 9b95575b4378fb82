#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace artifact::text {

bool is_space(char32_t cp);

// Punctuation over the common Unicode P* blocks (ASCII, general
// punctuation, CJK symbols, fullwidth forms). Not a full category table.
bool is_punct(char32_t cp);

// The ASCII set used by legacy QA evaluation scripts.
bool is_ascii_punct(char32_t cp);

// Han ideographs, hiragana and katakana: scripts tokenized per character.
bool is_cjk(char32_t cp);

// Simple one-to-one lowercasing for Latin, Greek, Cyrillic and fullwidth
// ranges; identity elsewhere.
char32_t to_lower(char32_t cp);

// Lowercase every code point of a UTF-8 string.
std::string fold_case(std::string_view text);

// Strip leading/trailing Unicode whitespace.
std::string trim(std::string_view text);

// Split on runs of Unicode whitespace. Empty text yields no tokens.
std::vector<std::string> ws_tokens(std::string_view text);

// Bijective escaping for tab-separated journals: \\ \t \n \r.
std::string tsv_escape(std::string_view raw);
std::string tsv_unescape(std::string_view escaped);

std::vector<std::string> split(std::string_view text, char sep);

}  // namespace artifact::text
