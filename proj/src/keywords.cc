#include "hive/keywords.h"

#include <algorithm>

#include "hive/error.h"

namespace hive {

std::string_view to_string(Algorithm algorithm) {
  return algorithm == Algorithm::kRake ? "rake" : "yake";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "rake") return Algorithm::kRake;
  if (name == "yake") return Algorithm::kYake;
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm: " + std::string(name));
}

void ExtractionConfig::validate() const {
  if (max_phrase_len < 1) throw Error(ErrorCode::kInvalidArgument, "max_phrase_len must be >= 1");
  if (top_k < 1) throw Error(ErrorCode::kInvalidArgument, "top_k must be >= 1");
}

bool ranks_before(const CandidatePhrase& a, const CandidatePhrase& b, ScorePolarity polarity) {
  if (a.score != b.score) {
    return polarity == ScorePolarity::kDescending ? a.score > b.score : a.score < b.score;
  }
  if (a.first_offset != b.first_offset) return a.first_offset < b.first_offset;
  return a.normalized < b.normalized;
}

void detail::rank_and_truncate(std::vector<CandidatePhrase>& phrases, ScorePolarity polarity,
                               std::size_t top_k) {
  std::sort(phrases.begin(), phrases.end(), [polarity](const auto& a, const auto& b) {
    return ranks_before(a, b, polarity);
  });
  if (phrases.size() > top_k) phrases.resize(top_k);
}

std::vector<CandidatePhrase> rake_extract(std::string_view text, const ExtractionConfig& config) {
  return rake_extract(text, config, *StopwordList::get(config.stopword_list_id));
}

std::vector<CandidatePhrase> yake_extract(std::string_view text, const ExtractionConfig& config) {
  return yake_extract(text, config, *StopwordList::get(config.stopword_list_id));
}

std::vector<CandidatePhrase> extract_keywords(std::string_view text, const ExtractionConfig& config) {
  return config.algorithm == Algorithm::kRake ? rake_extract(text, config) : yake_extract(text, config);
}

}  // namespace hive
