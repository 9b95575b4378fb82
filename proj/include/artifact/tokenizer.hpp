#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace artifact {

struct Token {
  std::string surface;
  std::size_t char_start = 0;  // code point offsets, char_end exclusive
  std::size_t char_end = 0;

  bool operator==(const Token&) const = default;
};

struct TokenizedText {
  std::string text;
  std::vector<Token> tokens;
};

enum class TokenizerKind {
  whitespace,  // split on Unicode whitespace only
  word,        // whitespace split + punctuation peeling + per-character CJK
};

// Offset-preserving tokenization. The word tokenizer splits on Unicode
// whitespace, peels leading/trailing punctuation characters into their
// own tokens, and emits per-character tokens for CJK script runs. The
// language tag is accepted for interface stability; segmentation is
// driven by script, not by the tag.
TokenizedText tokenize(std::string_view text, std::string_view language = "",
                       TokenizerKind kind = TokenizerKind::word);

// Token surfaces only, convenience for statistics.
std::vector<std::string> token_surfaces(std::string_view text,
                                        TokenizerKind kind = TokenizerKind::word);

}  // namespace artifact
