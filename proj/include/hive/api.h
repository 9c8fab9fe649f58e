#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hive/collapse.h"
#include "hive/document.h"
#include "hive/encoders.h"
#include "hive/error.h"
#include "hive/indexer.h"
#include "hive/keywords.h"
#include "hive/store.h"
#include "json.hpp"

namespace hive {

using Json = nlohmann::ordered_json;

struct Page {
  std::size_t offset = 0;
  std::size_t limit = 100;

  /// Parses optional query values; limit must be 1..10000.
  static Page parse(std::string_view offset, std::string_view limit);
};

struct IndexRequest {
  std::optional<std::string> text;
  std::optional<std::string> url;
  std::optional<std::string> file;  // CLI only
  std::vector<std::string> ontologies;
  ExtractionConfig config;
  std::optional<SortMode> sort;

  /// {text|url, ontologies[], algorithm, max_phrase_len, top_k, sort}
  static IndexRequest from_json(const nlohmann::json& body);
};

struct EncodedConcept {
  std::string content_type;
  std::string body;
};

/// Comma list, empty pieces dropped.
std::vector<std::string> split_ids(std::string_view list);

Json concept_json(const Concept& c, const ConceptGraph& graph);
Json record_json(const OntologyRecord& record);
Json report_json(const ConversionReport& report);
Json hits_json(const HitMap& hits);
Json indexing_json(const IndexingResult& result, std::optional<SortMode> sort = std::nullopt);
/// One batch JSONL record.
Json batch_line_json(const IndexingResult& result, std::string_view article_id);

/// {"error":{"code","message"}}
Json error_json(ErrorCode code, std::string_view message);
int http_status(ErrorCode code);

// Every read takes one store snapshot for its whole duration.
class Api {
 public:
  explicit Api(Store& store) : store_(store) {}

  Json healthz() const;
  Json list_ontologies() const;
  Json roots(std::string_view id, Page page) const;
  Json concept_detail(std::string_view id, std::string_view uri) const;
  Json children(std::string_view id, std::string_view uri, Page page) const;
  Json search(std::string_view query, const std::vector<std::string>& ids, Page page) const;
  Json index(const IndexRequest& request) const;
  EncodedConcept encoding(std::string_view ontology_id, std::string_view uri, std::string_view format) const;

  /// format is a syntax name or "auto" (needs filename).
  Json ingest(std::string_view document, std::string_view filename, std::string_view id,
              std::string_view format, std::string_view display_name);
  Json ingest_path(const std::filesystem::path& path, std::string_view id, std::string_view format,
                   std::string_view display_name);
  Json delete_ontology(std::string_view id);

  Store& store() { return store_; }

 private:
  Store& store_;
};

}  // namespace hive
