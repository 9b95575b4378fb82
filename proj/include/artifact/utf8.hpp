#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace artifact::utf8 {

// Decoded text with a byte offset per code point. offsets has size
// code_points.size() + 1; offsets.back() == byte length of the input.
struct Decoded {
  std::vector<char32_t> code_points;
  std::vector<std::size_t> byte_offsets;
};

bool is_valid(std::string_view text);

// Strict decode: rejects overlong forms, surrogates and values past
// U+10FFFF. Throws ValidationError on malformed input.
Decoded decode(std::string_view text);

std::string encode(char32_t cp);
std::string encode(const std::vector<char32_t>& cps);

// Number of code points in a valid UTF-8 string.
std::size_t length(std::string_view text);

// Substring addressed in code points (start + count), returned as UTF-8
// bytes. Throws ValidationError when the range exceeds the text.
std::string substr(std::string_view text, std::size_t cp_start, std::size_t cp_count);

}  // namespace artifact::utf8
