#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hive/stopwords.h"

namespace hive {

enum class Algorithm { kRake, kYake };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

/// RAKE scores rank high-to-low, YAKE scores low-to-high.
enum class ScorePolarity { kDescending, kAscending };

struct ExtractionConfig {
  Algorithm algorithm = Algorithm::kRake;
  std::size_t max_phrase_len = 3;
  std::size_t top_k = 30;
  std::string stopword_list_id = std::string(StopwordList::kDefaultId);

  ScorePolarity score_polarity() const {
    return algorithm == Algorithm::kRake ? ScorePolarity::kDescending : ScorePolarity::kAscending;
  }
  /// Throws kInvalidArgument unless max_phrase_len >= 1 and top_k >= 1.
  void validate() const;
};

struct CandidatePhrase {
  std::string text;        // first occurrence, original case
  std::string normalized;  // lowercase tokens joined by single spaces
  double score = 0.0;
  std::size_t token_count = 0;
  std::size_t first_offset = 0;  // character index of the first occurrence
  std::size_t frequency = 0;     // occurrences in the document

  bool operator==(const CandidatePhrase&) const = default;
};

/// Ranking order: better score first under the polarity, then earlier
/// first_offset, then normalized text.
bool ranks_before(const CandidatePhrase& a, const CandidatePhrase& b, ScorePolarity polarity);

/// Rapid Automatic Keyword Extraction. Candidates are maximal stopword-free
/// runs inside a sentence (also cut at phrase delimiters), with digit-only
/// tokens trimmed from both ends and the run cut to max_phrase_len tokens.
/// score(phrase) = sum over its words of deg(w) / freq(w).
std::vector<CandidatePhrase> rake_extract(std::string_view text, const ExtractionConfig& config);
std::vector<CandidatePhrase> rake_extract(std::string_view text, const ExtractionConfig& config,
                                          const StopwordList& stopwords);

/// YAKE single-document statistical extraction (lower is better).
std::vector<CandidatePhrase> yake_extract(std::string_view text, const ExtractionConfig& config);
std::vector<CandidatePhrase> yake_extract(std::string_view text, const ExtractionConfig& config,
                                          const StopwordList& stopwords);

/// Dispatches on config.algorithm.
std::vector<CandidatePhrase> extract_keywords(std::string_view text, const ExtractionConfig& config);

namespace detail {
// Sorts by ranks_before and keeps the first top_k.
void rank_and_truncate(std::vector<CandidatePhrase>& phrases, ScorePolarity polarity, std::size_t top_k);
}  // namespace detail

}  // namespace hive
