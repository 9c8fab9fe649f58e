#include "hive/ingest.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hive/error.h"

namespace hive {

namespace {

SourceFormat source_format_for(RdfFormat format, bool skos_native) {
  if (skos_native) return SourceFormat::kSkosNative;
  switch (format) {
    case RdfFormat::kRdfXml: return SourceFormat::kRdfXml;
    case RdfFormat::kTurtle: return SourceFormat::kTurtle;
    case RdfFormat::kNTriples: return SourceFormat::kNTriples;
  }
  return SourceFormat::kRdfXml;
}

}  // namespace

void validate_ontology_id(std::string_view id) {
  const bool ok = !id.empty() && id.size() <= 64 && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' || c == '_' ||
           c == '-';
  });
  if (!ok) {
    throw Error(ErrorCode::kInvalidArgument,
                "invalid ontology id '" + std::string(id) + "' (use 1-64 characters from A-Z a-z 0-9 . _ -)");
  }
}

IngestResult ingest_document(Store& store, std::string_view document, RdfFormat format,
                             std::string_view ontology_id, std::string_view display_name,
                             std::string_view base_iri) {
  validate_ontology_id(ontology_id);
  const std::vector<Triple> triples = parse_rdf(document, format, base_iri);
  CollapseResult collapsed = collapse_to_skos(triples, ontology_id);

  OntologyRecord record;
  record.id = std::string(ontology_id);
  record.display_name = display_name.empty() ? record.id : std::string(display_name);
  record.source_format = source_format_for(format, collapsed.skos_native);

  IngestResult result;
  result.report = collapsed.report;
  result.version = store.commit_ontology(record, std::move(collapsed.concepts));
  result.record = store.snapshot()->at(ontology_id).record;
  return result;
}

IngestResult ingest_file(Store& store, const std::filesystem::path& path, std::optional<RdfFormat> format,
                         std::string_view ontology_id, std::string_view display_name) {
  validate_ontology_id(ontology_id);
  const RdfFormat fmt = format ? *format : format_for_path(path);
  std::ifstream in(path, std::ios::binary);
  if (!in || std::filesystem::is_directory(path)) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed for " + path.string());
  std::error_code ec;
  const auto absolute = std::filesystem::absolute(path, ec);
  const std::string base = "file://" + (ec ? path.string() : absolute.generic_string());
  return ingest_document(store, buffer.str(), fmt, ontology_id, display_name, base);
}

}  // namespace hive
