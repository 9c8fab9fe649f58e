#include "hive/search.h"

#include <algorithm>

#include "hive/error.h"
#include "hive/text.h"

namespace hive {

std::string_view to_string(MatchField field) {
  switch (field) {
    case MatchField::kPrefLabel: return "prefLabel";
    case MatchField::kAltLabel: return "altLabel";
    case MatchField::kNote: return "note";
  }
  return "prefLabel";
}

namespace {

bool contains(std::string_view haystack, const std::string& needle) {
  return normalize(haystack).find(needle) != std::string::npos;
}

}  // namespace

SearchResults search_concepts(const Snapshot& snapshot, std::string_view query,
                              const std::vector<std::string>& ontology_ids) {
  const std::string needle = normalize(query);
  if (needle.empty()) throw Error(ErrorCode::kInvalidArgument, "search query is empty");
  const std::vector<std::string> ids = snapshot.resolve_ids(ontology_ids);

  SearchResults out;
  for (const std::string& id : ids) {
    std::vector<SearchHit>& hits = out[id];
    for (const Concept& c : snapshot.graph(id).concepts()) {
      if (contains(c.pref_label, needle)) {
        hits.push_back({&c, MatchField::kPrefLabel});
      } else if (std::any_of(c.alt_labels.begin(), c.alt_labels.end(),
                             [&](const std::string& s) { return contains(s, needle); })) {
        hits.push_back({&c, MatchField::kAltLabel});
      } else if (std::any_of(c.notes.begin(), c.notes.end(),
                             [&](const std::string& s) { return contains(s, needle); })) {
        hits.push_back({&c, MatchField::kNote});
      }
    }
    std::stable_sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
      if (a.field != b.field) return a.field < b.field;
      return sibling_less(*a.concept_ptr, *b.concept_ptr);
    });
  }
  return out;
}

}  // namespace hive
