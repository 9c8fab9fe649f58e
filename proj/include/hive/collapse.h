#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "hive/rdf.h"
#include "hive/skos.h"

namespace hive {

struct ConversionReport {
  std::size_t concepts_emitted = 0;
  std::size_t labels_defaulted = 0;  // no usable label, URI local name used
  std::size_t cycles_broken = 0;
  std::size_t dangling_links_dropped = 0;
  std::size_t blank_nodes_skipped = 0;  // distinct blank node ids in the input

  bool operator==(const ConversionReport&) const = default;
};

struct CollapseResult {
  std::vector<Concept> concepts;  // uri order
  ConversionReport report;
  bool skos_native = false;       // every concept was typed skos:Concept, none owl:Class
};

/// Collapses RDF/OWL/SKOS triples into SKOS concepts:
///  - IRI subjects typed owl:Class or skos:Concept become concepts
///    (owl:Thing and skos:ConceptScheme nodes excluded);
///  - prefLabel, else rdfs:label, else the URI local name gives pref_label
///    (language preference: "en", untagged, smallest tag); the other labels
///    become alt_labels;
///  - rdfs:subClassOf / skos:broader / inverted skos:narrower give broader,
///    narrower is the reciprocal; skos:related is symmetric;
///  - rdfs:comment, skos:scopeNote and any *definition predicate are notes;
///  - blank nodes are skipped, links to non-concepts dropped, and broader
///    cycles broken by deleting DFS back edges (roots in uri order first).
/// Throws kEmptyOntology when no concept is emitted.
CollapseResult collapse_to_skos(std::span<const Triple> triples, std::string_view ontology_id = {});

/// Local name of an IRI: text after the last '#', '/' or ':'.
std::string_view iri_local_name(std::string_view iri);

}  // namespace hive
