#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hive/document.h"
#include "hive/keywords.h"
#include "hive/store.h"

namespace hive {

struct TermHit {
  std::string ontology_id;
  std::string uri;
  std::string pref_label;
  std::string matched_phrase;  // normalized; equals normalize(pref_label)
  double score = 0.0;          // extraction score of the candidate
  std::size_t rank = 0;        // 1-based within the ontology
  int display_weight = 0;      // 1..5, 5 is the most relevant bin

  bool operator==(const TermHit&) const = default;
};

using HitMap = std::map<std::string, std::vector<TermHit>>;

struct SourceSummary {
  SourceKind kind = SourceKind::kRawText;
  std::string locator;
  std::size_t char_count = 0;
  TextEncoding encoding = TextEncoding::kUtf8;
};

struct IndexingResult {
  SourceSummary source;
  ExtractionConfig config;
  HitMap hits_by_ontology;  // one entry per selected ontology, possibly empty
  std::size_t candidates_total = 0;
  double elapsed_ms = 0.0;
  std::vector<std::string> warnings;

  std::size_t hit_count() const;
};

/// Quantile bin for a 1-based rank among n hits: 5 for the best fifth down
/// to 1 for the worst.
int display_weight(std::size_t rank, std::size_t n);

/// Exact normalized prefLabel matching of candidates against the selected
/// ontologies (empty = all). Within an ontology, hits follow candidate rank
/// order under the polarity, then concept uri.
HitMap match_candidates(const Snapshot& snapshot, std::span<const CandidatePhrase> candidates,
                        const std::vector<std::string>& ontology_ids, ScorePolarity polarity);

/// extract -> match -> group -> rank. Empty text yields no hits and a warning.
IndexingResult index_document(const Snapshot& snapshot, const DocumentSource& source,
                              const std::vector<std::string>& ontology_ids, const ExtractionConfig& config);

struct BatchInput {
  std::string locator;
  std::function<DocumentSource()> load;
};

struct BatchItem {
  std::string locator;
  std::optional<IndexingResult> result;
  std::string error;  // set when result is empty
};

/// Indexes every input on up to `threads` workers; output keeps input
/// order and failures are recorded per item. Throws only when every item
/// fails (the first error is rethrown) or ontology ids are unknown.
std::vector<BatchItem> index_batch(const Snapshot& snapshot, const std::vector<BatchInput>& inputs,
                                   const std::vector<std::string>& ontology_ids, const ExtractionConfig& config,
                                   std::size_t threads = 0);

/// The four display orders.
///  by-score: ontologies by id, hits by rank;
///  alphabetical: ontologies by id, hits by prefLabel;
///  by-ontology-hits: ontologies with more hits first, hits by rank;
///  flat: every hit merged by score polarity, then ontology id, then rank.
enum class SortMode { kByScore, kAlphabetical, kByOntologyHitCount, kFlatMerged };

std::string_view to_string(SortMode mode);
SortMode parse_sort_mode(std::string_view name);

std::vector<TermHit> sorted_hits(const IndexingResult& result, SortMode mode);

/// Source kind for a batch file: .html/.htm are scraped, registered binary
/// extensions go through the converter, everything else is read as text.
DocumentSource load_document_file(const std::filesystem::path& path, const ConverterRegistry& converters = {});

}  // namespace hive
