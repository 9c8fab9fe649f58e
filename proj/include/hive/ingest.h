#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "hive/collapse.h"
#include "hive/rdf.h"
#include "hive/skos.h"
#include "hive/store.h"

namespace hive {

struct IngestResult {
  OntologyRecord record;
  ConversionReport report;
  std::uint64_t version = 0;
};

/// Ids are 1-64 chars of [A-Za-z0-9._-]; anything else throws kInvalidArgument.
void validate_ontology_id(std::string_view id);

/// Parses, collapses and commits one ontology, replacing any prior one with
/// the same id. No format means dispatch on the file extension. An empty
/// display name defaults to the id.
IngestResult ingest_file(Store& store, const std::filesystem::path& path, std::optional<RdfFormat> format,
                         std::string_view ontology_id, std::string_view display_name = {});

/// Same pipeline over an in-memory document (uploads).
IngestResult ingest_document(Store& store, std::string_view document, RdfFormat format,
                             std::string_view ontology_id, std::string_view display_name = {},
                             std::string_view base_iri = {});

}  // namespace hive
