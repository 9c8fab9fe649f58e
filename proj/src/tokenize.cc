#include "hive/tokenize.h"

#include "hive/text.h"

namespace hive {

namespace {

bool ends_sentence(char c) { return c == '.' || c == '!' || c == '?' || c == '\n'; }

bool breaks_phrase(char c) {
  switch (c) {
    case ',': case ';': case ':': case '(': case ')': case '[': case ']':
    case '{': case '}': case '"': case '|':
      return true;
    default:
      return false;
  }
}

}  // namespace

std::vector<Sentence> tokenize(std::string_view text) {
  std::vector<Sentence> sentences;
  Sentence current;
  bool pending_break = false;
  std::size_t chars = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (is_word_byte(c)) {
      Token tok;
      tok.byte_begin = i;
      tok.offset = chars;
      bool digits = true;
      while (i < text.size() && is_word_byte(static_cast<unsigned char>(text[i]))) {
        const char ch = text[i];
        if (ch < '0' || ch > '9') digits = false;
        if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) ++chars;
        ++i;
      }
      tok.byte_end = i;
      tok.text = std::string(text.substr(tok.byte_begin, i - tok.byte_begin));
      tok.lower = to_lower_ascii(tok.text);
      tok.numeric = digits;
      tok.phrase_break = pending_break && !current.empty();
      pending_break = false;
      current.push_back(std::move(tok));
      continue;
    }
    if (ends_sentence(static_cast<char>(c))) {
      if (!current.empty()) sentences.push_back(std::move(current));
      current.clear();
      pending_break = false;
    } else if (breaks_phrase(static_cast<char>(c))) {
      pending_break = true;
    }
    ++chars;
    ++i;
  }
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

}  // namespace hive
