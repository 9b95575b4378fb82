#include "artifact/utf8.hpp"

#include "artifact/error.hpp"

namespace artifact::utf8 {
namespace {

// Returns the decoded code point and advances pos, or throws.
char32_t decode_one(std::string_view s, std::size_t& pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  const unsigned char b0 = byte(pos);
  auto fail = [&]() -> char32_t {
    throw ValidationError("invalid UTF-8 at byte offset " + std::to_string(pos));
  };
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return fail();
  }
  if (pos + len > s.size()) return fail();
  for (int i = 1; i < len; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) return fail();
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len]) return fail();                   // overlong
  if (cp >= 0xD800 && cp <= 0xDFFF) return fail();     // surrogate
  if (cp > 0x10FFFF) return fail();
  pos += len;
  return cp;
}

}  // namespace

bool is_valid(std::string_view text) {
  std::size_t pos = 0;
  try {
    while (pos < text.size()) decode_one(text, pos);
  } catch (const ValidationError&) {
    return false;
  }
  return true;
}

Decoded decode(std::string_view text) {
  Decoded out;
  out.code_points.reserve(text.size());
  out.byte_offsets.reserve(text.size() + 1);
  std::size_t pos = 0;
  while (pos < text.size()) {
    out.byte_offsets.push_back(pos);
    out.code_points.push_back(decode_one(text, pos));
  }
  out.byte_offsets.push_back(text.size());
  return out;
}

std::string encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::string encode(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) out += encode(cp);
  return out;
}

std::size_t length(std::string_view text) {
  std::size_t pos = 0, n = 0;
  while (pos < text.size()) {
    decode_one(text, pos);
    ++n;
  }
  return n;
}

std::string substr(std::string_view text, std::size_t cp_start, std::size_t cp_count) {
  std::size_t pos = 0, cp = 0;
  while (cp < cp_start && pos < text.size()) {
    decode_one(text, pos);
    ++cp;
  }
  if (cp < cp_start) throw ValidationError("code point start past end of text");
  const std::size_t byte_start = pos;
  while (cp < cp_start + cp_count && pos < text.size()) {
    decode_one(text, pos);
    ++cp;
  }
  if (cp < cp_start + cp_count) throw ValidationError("code point range past end of text");
  return std::string(text.substr(byte_start, pos - byte_start));
}

}  // namespace artifact::utf8
