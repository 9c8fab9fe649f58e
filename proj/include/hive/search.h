#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hive/skos.h"
#include "hive/store.h"

namespace hive {

enum class MatchField { kPrefLabel, kAltLabel, kNote };

std::string_view to_string(MatchField field);

struct SearchHit {
  const Concept* concept_ptr = nullptr;  // owned by the snapshot
  MatchField field = MatchField::kPrefLabel;
};

using SearchResults = std::map<std::string, std::vector<SearchHit>>;

/// Case-insensitive normalized substring search over prefLabel, altLabels
/// and notes. Every requested ontology (empty = all) gets an entry; hits are
/// tiered prefLabel, altLabel, note and alphabetical inside a tier. An empty
/// query throws kInvalidArgument, an unknown id kNotFound.
SearchResults search_concepts(const Snapshot& snapshot, std::string_view query,
                              const std::vector<std::string>& ontology_ids);

}  // namespace hive
