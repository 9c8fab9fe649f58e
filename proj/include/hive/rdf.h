#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace hive {

enum class RdfFormat { kRdfXml, kTurtle, kNTriples };

std::string_view to_string(RdfFormat format);
/// Accepts "rdf-xml", "turtle", "ntriples"; anything else is kUnsupported.
RdfFormat parse_rdf_format(std::string_view name);
/// .rdf/.owl/.xml -> rdf-xml, .ttl -> turtle, .nt -> ntriples.
RdfFormat format_for_path(const std::filesystem::path& path);

struct Term {
  enum class Kind { kIri, kBlank, kLiteral };

  Kind kind = Kind::kIri;
  std::string value;     // IRI, blank node label, or lexical form
  std::string language;  // literals only
  std::string datatype;  // literals only; empty for plain literals

  static Term iri(std::string v) { return {Kind::kIri, std::move(v), {}, {}}; }
  static Term blank(std::string v) { return {Kind::kBlank, std::move(v), {}, {}}; }
  static Term literal(std::string v, std::string lang = {}, std::string type = {}) {
    return {Kind::kLiteral, std::move(v), std::move(lang), std::move(type)};
  }

  bool is_iri() const { return kind == Kind::kIri; }
  bool is_blank() const { return kind == Kind::kBlank; }
  bool is_literal() const { return kind == Kind::kLiteral; }

  bool operator==(const Term&) const = default;
};

struct Triple {
  Term subject;    // IRI or blank
  Term predicate;  // always IRI
  Term object;

  bool operator==(const Triple&) const = default;
};

using TripleSink = std::function<void(Triple&&)>;

/// Streams every triple of the document to sink in document order.
/// Malformed input throws ParseError with the line and column.
void parse_rdf(std::string_view document, RdfFormat format, const TripleSink& sink,
               std::string_view base_iri = {});
std::vector<Triple> parse_rdf(std::string_view document, RdfFormat format,
                              std::string_view base_iri = {});

/// Writes one N-Triples line (with trailing newline) for t.
std::string to_ntriples(const Triple& t);

namespace detail {
void parse_ntriples(std::string_view document, const TripleSink& sink);
void parse_turtle(std::string_view document, const TripleSink& sink, std::string_view base_iri);
void parse_rdf_xml(std::string_view document, const TripleSink& sink, std::string_view base_iri);
std::string resolve_iri(std::string_view base, std::string_view reference);
}  // namespace detail

namespace vocab {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kSkos = "http://www.w3.org/2004/02/skos/core#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

inline const std::string kRdfType = std::string(kRdf) + "type";
inline const std::string kRdfFirst = std::string(kRdf) + "first";
inline const std::string kRdfRest = std::string(kRdf) + "rest";
inline const std::string kRdfNil = std::string(kRdf) + "nil";
inline const std::string kRdfLangString = std::string(kRdf) + "langString";
inline const std::string kRdfXmlLiteral = std::string(kRdf) + "XMLLiteral";
inline const std::string kRdfsLabel = std::string(kRdfs) + "label";
inline const std::string kRdfsComment = std::string(kRdfs) + "comment";
inline const std::string kRdfsSubClassOf = std::string(kRdfs) + "subClassOf";
inline const std::string kOwlClass = std::string(kOwl) + "Class";
inline const std::string kOwlThing = std::string(kOwl) + "Thing";
inline const std::string kSkosConcept = std::string(kSkos) + "Concept";
inline const std::string kSkosConceptScheme = std::string(kSkos) + "ConceptScheme";
inline const std::string kSkosPrefLabel = std::string(kSkos) + "prefLabel";
inline const std::string kSkosAltLabel = std::string(kSkos) + "altLabel";
inline const std::string kSkosBroader = std::string(kSkos) + "broader";
inline const std::string kSkosNarrower = std::string(kSkos) + "narrower";
inline const std::string kSkosRelated = std::string(kSkos) + "related";
inline const std::string kSkosScopeNote = std::string(kSkos) + "scopeNote";
inline const std::string kSkosDefinition = std::string(kSkos) + "definition";
}  // namespace vocab

}  // namespace hive
