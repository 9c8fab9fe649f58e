#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace hive {

/// Byte-level word test shared by the tokenizer and normalize(): whitespace
/// and ASCII punctuation separate words, everything else (including UTF-8
/// continuation bytes) belongs to a word.
inline bool is_word_byte(unsigned char c) {
  if (c >= 0x80) return true;
  if (c <= ' ' || c == 0x7f) return false;
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::string to_lower_ascii(std::string_view s);
std::string_view trim(std::string_view s);

/// Lowercases, turns punctuation into spaces and collapses whitespace.
/// "Pore-Size  Tuning" -> "pore size tuning".
std::string normalize(std::string_view s);

/// Case-insensitive (ASCII folding) ordering, tie-broken on the raw bytes.
int compare_labels(std::string_view a, std::string_view b);

bool is_valid_utf8(std::string_view s);
std::size_t utf8_length(std::string_view s);
std::string latin1_to_utf8(std::string_view s);
void append_utf8(std::string& out, char32_t cp);

}  // namespace hive
