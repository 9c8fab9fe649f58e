#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hive {

enum class SourceFormat { kRdfXml, kTurtle, kNTriples, kSkosNative };

std::string_view to_string(SourceFormat format);
SourceFormat parse_source_format(std::string_view name);

// One SKOS concept after collapse. Identity is (ontology_id, uri).
struct Concept {
  std::string uri;
  std::string pref_label;
  std::vector<std::string> alt_labels;
  std::vector<std::string> notes;
  std::vector<std::string> broader;
  std::vector<std::string> narrower;
  std::vector<std::string> related;
  std::string ontology_id;

  bool operator==(const Concept&) const = default;
};

struct OntologyRecord {
  std::string id;
  std::string display_name;
  SourceFormat source_format = SourceFormat::kSkosNative;
  std::size_t concept_count = 0;
  std::vector<std::string> root_uris;

  bool operator==(const OntologyRecord&) const = default;
};

/// Sibling order: compare_labels on pref_label, then uri.
bool sibling_less(const Concept& a, const Concept& b);

/// Returns one message per violated model invariant (empty when valid):
/// unique uris, non-empty labels, resolvable links, broader/narrower
/// reciprocity, disjoint broader/narrower and an acyclic broader relation.
std::vector<std::string> check_invariants(std::span<const Concept> concepts);

/// Immutable concept graph for one ontology with navigation and the
/// normalized prefLabel lookup used by the indexer.
class ConceptGraph {
 public:
  ConceptGraph() = default;
  explicit ConceptGraph(std::vector<Concept> concepts);

  std::size_t size() const { return concepts_.size(); }

  /// All concepts in uri order.
  std::span<const Concept> concepts() const { return concepts_; }

  const Concept* find(std::string_view uri) const;
  const Concept& at(std::string_view uri) const;

  /// Concepts with no broader link, in sibling order.
  std::vector<const Concept*> roots() const;
  /// Concepts whose broader list contains uri, in sibling order.
  std::vector<const Concept*> children(std::string_view uri) const;
  /// Root uris in uri order, as persisted in OntologyRecord.
  std::vector<std::string> root_uris() const;

  /// Concepts whose normalize(pref_label) equals the given key, uri order.
  std::vector<const Concept*> lookup_pref(std::string_view normalized) const;
  /// The distinct normalized prefLabel keys.
  std::size_t pref_index_size() const { return pref_index_.size(); }

 private:
  std::vector<Concept> concepts_;
  std::unordered_map<std::string, std::size_t> by_uri_;
  std::vector<std::size_t> roots_;
  std::vector<std::vector<std::size_t>> children_;
  std::unordered_map<std::string, std::vector<std::size_t>> pref_index_;
};

}  // namespace hive
