#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace hive {

enum class Rating { kRelevant, kPartial, kNot };

std::string_view to_string(Rating rating);
/// Accepts relevant/partial/not plus long forms ("partially relevant",
/// "not relevant") and single letters r/p/n, case-insensitively.
Rating parse_rating(std::string_view text);

/// Relevant iff at least k ratings are relevant or partial. Throws
/// kInvalidArgument unless ratings.size() == n and 1 <= k <= n.
bool aggregate_threshold(std::span<const Rating> ratings, std::size_t k, std::size_t n);

/// relevant / candidates; 0 for zero candidates. relevant > candidates
/// throws kInvalidArgument.
double precision(std::size_t candidates, std::size_t relevant);

/// (relevant + partial) / extracted; throws when the counts overflow extracted.
double combined_relevancy(std::size_t extracted, std::size_t relevant, std::size_t partial);

/// num/den as a percentage with two decimals, rounded half up in exact
/// integer arithmetic: (8, 17) -> "47.06". den == 0 gives "0.00".
std::string format_percent(std::size_t num, std::size_t den);

struct PrecisionRow {
  std::string id;
  std::size_t candidates = 0;
  std::size_t relevant = 0;
  double precision = 0.0;
  bool degenerate = false;  // zero candidates

  std::string percent() const { return format_percent(relevant, candidates); }
};

struct CountStats {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample (n - 1) standard deviation
  std::size_t min = 0;
  std::size_t max = 0;
};

CountStats count_stats(std::span<const std::size_t> values);

struct CombinedRelevancy {
  std::size_t extracted = 0;
  std::size_t relevant = 0;
  std::size_t partial = 0;
  double value = 0.0;
};

struct StudySummary {
  std::size_t k = 0;
  std::size_t n = 0;
  std::vector<PrecisionRow> per_article;   // results order
  std::vector<PrecisionRow> per_ontology;  // id order
  PrecisionRow totals;
  CountStats article_stats;
  CountStats ontology_stats;
  std::optional<CombinedRelevancy> combined;  // single-rater studies only
};

struct ResultHit {
  std::string ontology_id;
  std::string term;  // normalized
};

struct ArticleResult {
  std::string article_id;
  std::vector<std::string> ontology_ids;  // every selected ontology, hits or not
  std::vector<ResultHit> hits;
};

struct Judgment {
  std::string article_id;
  std::string ontology_id;
  std::string term;
  std::string rater;
  Rating rating = Rating::kNot;
};

/// Parses index_batch JSONL. article_id falls back to the source file stem.
std::vector<ArticleResult> parse_results_jsonl(std::string_view text);

/// CSV with header article_id,ontology_id,term,rater,rating (RFC 4180 quoting).
std::vector<Judgment> parse_judgments_csv(std::string_view text);

/// Joins judgments to hits on (article, ontology, normalized term) and
/// aggregates with the k-of-n threshold. Unjudged hits count as not
/// relevant. Judgments naming an unknown article or term, or terms without
/// exactly n ratings, throw kInvalidArgument.
StudySummary summarize_study(const std::vector<ArticleResult>& results, const std::vector<Judgment>& judgments,
                             std::size_t k, std::size_t n);

nlohmann::ordered_json to_json(const StudySummary& summary);

}  // namespace hive
