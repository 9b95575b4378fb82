#include "artifact/tokenizer.hpp"

#include "artifact/text.hpp"
#include "artifact/utf8.hpp"

namespace artifact {

namespace {

// Emits one token covering cps[start, end).
void emit(TokenizedText& out, const utf8::Decoded& d, std::string_view text, std::size_t start,
          std::size_t end) {
  Token tok;
  tok.char_start = start;
  tok.char_end = end;
  tok.surface = std::string(
      text.substr(d.byte_offsets[start], d.byte_offsets[end] - d.byte_offsets[start]));
  out.tokens.push_back(std::move(tok));
}

// Splits one whitespace-free chunk cps[start, end): leading and trailing
// punctuation peel off one character per token, internal punctuation stays
// attached, CJK characters in the core become single-character tokens.
void split_chunk(TokenizedText& out, const utf8::Decoded& d, std::string_view text,
                 std::size_t start, std::size_t end) {
  const auto& cps = d.code_points;
  std::size_t lo = start, hi = end;
  while (lo < hi && text::is_punct(cps[lo])) {
    emit(out, d, text, lo, lo + 1);
    ++lo;
  }
  std::size_t trailing = 0;
  while (hi > lo && text::is_punct(cps[hi - 1])) {
    --hi;
    ++trailing;
  }
  std::size_t i = lo;
  while (i < hi) {
    if (text::is_cjk(cps[i])) {
      emit(out, d, text, i, i + 1);
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < hi && !text::is_cjk(cps[j])) ++j;
    emit(out, d, text, i, j);
    i = j;
  }
  for (std::size_t k = 0; k < trailing; ++k) emit(out, d, text, hi + k, hi + k + 1);
}

}  // namespace

TokenizedText tokenize(std::string_view text, std::string_view /*language*/, TokenizerKind kind) {
  TokenizedText out;
  out.text = std::string(text);
  const utf8::Decoded d = utf8::decode(text);
  const auto& cps = d.code_points;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && text::is_space(cps[i])) ++i;
    std::size_t j = i;
    while (j < cps.size() && !text::is_space(cps[j])) ++j;
    if (j > i) {
      if (kind == TokenizerKind::whitespace)
        emit(out, d, text, i, j);
      else
        split_chunk(out, d, text, i, j);
    }
    i = j;
  }
  return out;
}

std::vector<std::string> token_surfaces(std::string_view text, TokenizerKind kind) {
  TokenizedText t = tokenize(text, "", kind);
  std::vector<std::string> surfaces;
  surfaces.reserve(t.tokens.size());
  for (Token& tok : t.tokens) surfaces.push_back(std::move(tok.surface));
  return surfaces;
}

}  // namespace artifact
