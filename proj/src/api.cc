#include "hive/api.h"

#include <algorithm>
#include <charconv>

#include "hive/ingest.h"
#include "hive/search.h"
#include "hive/text.h"

namespace hive {

namespace {

std::size_t parse_count(std::string_view text, std::string_view name) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must be a non-negative integer");
  }
  return value;
}

Json paged(const std::vector<Json>& items, Page page) {
  Json arr = Json::array();
  const std::size_t end = std::min(items.size(), page.offset + page.limit);
  for (std::size_t i = page.offset; i < end; ++i) arr.push_back(items[i]);
  return arr;
}

RdfFormat resolve_format(std::string_view format, std::string_view filename) {
  if (format.empty() || format == "auto") {
    if (filename.empty()) throw Error(ErrorCode::kInvalidArgument, "format auto needs a file name");
    return format_for_path(std::filesystem::path(std::string(filename)));
  }
  return parse_rdf_format(format);
}

}  // namespace

Page Page::parse(std::string_view offset, std::string_view limit) {
  Page p;
  if (!offset.empty()) p.offset = parse_count(offset, "offset");
  if (!limit.empty()) p.limit = parse_count(limit, "limit");
  if (p.limit == 0 || p.limit > 10000) throw Error(ErrorCode::kInvalidArgument, "limit must be 1..10000");
  return p;
}

IndexRequest IndexRequest::from_json(const nlohmann::json& body) {
  if (!body.is_object()) throw Error(ErrorCode::kInvalidArgument, "index request must be a JSON object");
  IndexRequest r;
  const auto str = [&](const char* key) -> std::optional<std::string> {
    if (!body.contains(key) || body[key].is_null()) return std::nullopt;
    if (!body[key].is_string()) throw Error(ErrorCode::kInvalidArgument, std::string(key) + " must be a string");
    return body[key].get<std::string>();
  };
  const auto count = [&](const char* key, std::size_t& dest) {
    if (!body.contains(key) || body[key].is_null()) return;
    if (!body[key].is_number_unsigned()) {
      throw Error(ErrorCode::kInvalidArgument, std::string(key) + " must be a positive integer");
    }
    dest = body[key].get<std::size_t>();
  };
  r.text = str("text");
  r.url = str("url");
  if (r.text.has_value() == r.url.has_value()) {
    throw Error(ErrorCode::kInvalidArgument, "index request needs exactly one of text or url");
  }
  if (body.contains("ontologies")) {
    const auto& onts = body["ontologies"];
    if (!onts.is_array()) throw Error(ErrorCode::kInvalidArgument, "ontologies must be an array of ids");
    for (const auto& o : onts) {
      if (!o.is_string()) throw Error(ErrorCode::kInvalidArgument, "ontologies must be an array of ids");
      r.ontologies.push_back(o.get<std::string>());
    }
  }
  if (auto a = str("algorithm")) r.config.algorithm = parse_algorithm(*a);
  count("max_phrase_len", r.config.max_phrase_len);
  count("top_k", r.config.top_k);
  if (auto s = str("stopwords")) r.config.stopword_list_id = *s;
  if (auto s = str("sort")) r.sort = parse_sort_mode(*s);
  r.config.validate();
  return r;
}

std::vector<std::string> split_ids(std::string_view list) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    auto comma = list.find(',', pos);
    if (comma == std::string_view::npos) comma = list.size();
    const auto piece = trim(list.substr(pos, comma - pos));
    if (!piece.empty()) out.emplace_back(piece);
    pos = comma + 1;
  }
  return out;
}

Json concept_json(const Concept& c, const ConceptGraph& graph) {
  return Json{{"uri", c.uri},
              {"prefLabel", c.pref_label},
              {"altLabels", c.alt_labels},
              {"notes", c.notes},
              {"broader", c.broader},
              {"narrower", c.narrower},
              {"related", c.related},
              {"ontology_id", c.ontology_id},
              {"has_children", !graph.children(c.uri).empty()}};
}

Json record_json(const OntologyRecord& r) {
  return Json{{"id", r.id},
              {"display_name", r.display_name},
              {"source_format", to_string(r.source_format)},
              {"concept_count", r.concept_count},
              {"root_count", r.root_uris.size()}};
}

Json report_json(const ConversionReport& r) {
  return Json{{"concepts_emitted", r.concepts_emitted},
              {"labels_defaulted", r.labels_defaulted},
              {"cycles_broken", r.cycles_broken},
              {"dangling_links_dropped", r.dangling_links_dropped},
              {"blank_nodes_skipped", r.blank_nodes_skipped}};
}

namespace {

Json hit_json(const TermHit& h) {
  return Json{{"ontology_id", h.ontology_id},
              {"uri", h.uri},
              {"prefLabel", h.pref_label},
              {"matched_phrase", h.matched_phrase},
              {"score", h.score},
              {"rank", h.rank},
              {"display_weight", h.display_weight}};
}

}  // namespace

Json hits_json(const HitMap& hits) {
  Json out = Json::object();
  for (const auto& [id, list] : hits) {
    Json arr = Json::array();
    for (const auto& h : list) arr.push_back(hit_json(h));
    out[id] = std::move(arr);
  }
  return out;
}

Json indexing_json(const IndexingResult& r, std::optional<SortMode> sort) {
  Json out;
  out["source"] = {{"kind", to_string(r.source.kind)},
                   {"locator", r.source.locator},
                   {"char_count", r.source.char_count},
                   {"encoding", to_string(r.source.encoding)}};
  out["config"] = {{"algorithm", to_string(r.config.algorithm)},
                   {"max_phrase_len", r.config.max_phrase_len},
                   {"top_k", r.config.top_k},
                   {"stopwords", r.config.stopword_list_id}};
  out["candidates_total"] = r.candidates_total;
  out["hit_count"] = r.hit_count();
  out["elapsed_ms"] = r.elapsed_ms;
  out["warnings"] = r.warnings;
  out["hits"] = hits_json(r.hits_by_ontology);
  if (sort) {
    Json arr = Json::array();
    for (const auto& h : sorted_hits(r, *sort)) arr.push_back(hit_json(h));
    out["sort"] = to_string(*sort);
    out["sorted"] = std::move(arr);
  }
  return out;
}

Json batch_line_json(const IndexingResult& r, std::string_view article_id) {
  Json out;
  out["source"] = r.source.locator;
  out["article_id"] = article_id;
  out["candidates_total"] = r.candidates_total;
  Json hits = Json::object();
  for (const auto& [id, list] : r.hits_by_ontology) {
    Json arr = Json::array();
    for (const auto& h : list) {
      arr.push_back(Json{{"uri", h.uri},
                         {"prefLabel", h.pref_label},
                         {"matched_phrase", h.matched_phrase},
                         {"score", h.score},
                         {"rank", h.rank},
                         {"display_weight", h.display_weight}});
    }
    hits[id] = std::move(arr);
  }
  out["hits"] = std::move(hits);
  return out;
}

Json error_json(ErrorCode code, std::string_view message) {
  return Json{{"error", {{"code", error_code_name(code)}, {"message", message}}}};
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return 400;
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kConflict: return 409;
    case ErrorCode::kUnsupported: return 415;
    case ErrorCode::kParse:
    case ErrorCode::kDecode:
    case ErrorCode::kEmptyOntology:
    case ErrorCode::kInvariant: return 422;
    case ErrorCode::kNetwork: return 502;
    case ErrorCode::kIo:
    case ErrorCode::kCorrupt:
    case ErrorCode::kInternal: return 500;
  }
  return 500;
}

// ---------------------------------------------------------------------------

Json Api::healthz() const {
  return Json{{"status", "ok"}, {"version", store_.version()}};
}

Json Api::list_ontologies() const {
  Json arr = Json::array();
  for (const auto& r : store_.snapshot()->list_ontologies()) arr.push_back(record_json(r));
  return Json{{"ontologies", std::move(arr)}};
}

Json Api::roots(std::string_view id, Page page) const {
  const SnapshotPtr snap = store_.snapshot();
  const ConceptGraph& graph = snap->graph(id);
  std::vector<Json> items;
  for (const Concept* c : graph.roots()) items.push_back(concept_json(*c, graph));
  return Json{{"ontology_id", id},
              {"total", items.size()},
              {"offset", page.offset},
              {"limit", page.limit},
              {"concepts", paged(items, page)}};
}

Json Api::concept_detail(std::string_view id, std::string_view uri) const {
  if (uri.empty()) throw Error(ErrorCode::kInvalidArgument, "uri is required");
  const SnapshotPtr snap = store_.snapshot();
  const ConceptGraph& graph = snap->graph(id);
  return Json{{"ontology_id", id}, {"concept", concept_json(graph.at(uri), graph)}};
}

Json Api::children(std::string_view id, std::string_view uri, Page page) const {
  if (uri.empty()) throw Error(ErrorCode::kInvalidArgument, "uri is required");
  const SnapshotPtr snap = store_.snapshot();
  const ConceptGraph& graph = snap->graph(id);
  std::vector<Json> items;
  for (const Concept* c : graph.children(uri)) items.push_back(concept_json(*c, graph));
  return Json{{"ontology_id", id},
              {"uri", uri},
              {"total", items.size()},
              {"offset", page.offset},
              {"limit", page.limit},
              {"concepts", paged(items, page)}};
}

Json Api::search(std::string_view query, const std::vector<std::string>& ids, Page page) const {
  const SnapshotPtr snap = store_.snapshot();
  const SearchResults results = search_concepts(*snap, query, ids);
  Json groups = Json::object();
  for (const auto& [id, hits] : results) {
    const ConceptGraph& graph = snap->graph(id);
    std::vector<Json> items;
    for (const auto& h : hits) {
      Json c = concept_json(*h.concept_ptr, graph);
      c["matched_field"] = to_string(h.field);
      items.push_back(std::move(c));
    }
    groups[id] = Json{{"total", items.size()}, {"concepts", paged(items, page)}};
  }
  return Json{{"query", query}, {"offset", page.offset}, {"limit", page.limit}, {"results", std::move(groups)}};
}

Json Api::index(const IndexRequest& request) const {
  const SnapshotPtr snap = store_.snapshot();
  // Unknown ids fail before any network or file work.
  const std::vector<std::string> ids = snap->resolve_ids(request.ontologies);
  DocumentSource source;
  if (request.text) {
    source = from_raw_text(*request.text);
  } else if (request.url) {
    source = fetch_url(*request.url);
  } else if (request.file) {
    source = load_document_file(*request.file);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "index request needs text, url or file");
  }
  return indexing_json(index_document(*snap, source, ids, request.config), request.sort);
}

EncodedConcept Api::encoding(std::string_view ontology_id, std::string_view uri, std::string_view format) const {
  if (uri.empty()) throw Error(ErrorCode::kInvalidArgument, "uri is required");
  const EncodingFormat fmt = parse_encoding_format(format.empty() ? "json-ld" : format);
  const SnapshotPtr snap = store_.snapshot();
  return {std::string(content_type(fmt)), encode_concept(snap->graph(ontology_id).at(uri), fmt)};
}

Json Api::ingest(std::string_view document, std::string_view filename, std::string_view id,
                 std::string_view format, std::string_view display_name) {
  const RdfFormat fmt = resolve_format(format, filename);
  const std::string base = "file:///upload/" + std::string(filename.empty() ? "document" : filename);
  const IngestResult r = ingest_document(store_, document, fmt, id, display_name, base);
  return Json{{"ontology", record_json(r.record)}, {"report", report_json(r.report)}, {"version", r.version}};
}

Json Api::ingest_path(const std::filesystem::path& path, std::string_view id, std::string_view format,
                      std::string_view display_name) {
  std::optional<RdfFormat> fmt;
  if (!format.empty() && format != "auto") fmt = parse_rdf_format(format);
  const IngestResult r = ingest_file(store_, path, fmt, id, display_name);
  return Json{{"ontology", record_json(r.record)}, {"report", report_json(r.report)}, {"version", r.version}};
}

Json Api::delete_ontology(std::string_view id) {
  const auto version = store_.delete_ontology(id);
  return Json{{"deleted", id}, {"version", version}};
}

}  // namespace hive
