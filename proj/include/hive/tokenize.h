#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hive {

struct Token {
  std::string text;          // original case
  std::string lower;         // ASCII-lowercased
  std::size_t offset = 0;    // character (code point) index into the input
  std::size_t byte_begin = 0;
  std::size_t byte_end = 0;
  bool numeric = false;      // digits only
  bool phrase_break = false; // a phrase delimiter (, ; : ( ) [ ] { } " |) precedes it
};

using Sentence = std::vector<Token>;

/// Sentences end at . ! ? and newlines; words are maximal runs of bytes that
/// are neither whitespace nor ASCII punctuation, so "pore-size" yields two
/// tokens. Empty sentences are dropped.
std::vector<Sentence> tokenize(std::string_view text);

}  // namespace hive
