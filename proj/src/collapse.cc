#include "hive/collapse.h"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "hive/error.h"
#include "hive/text.h"

namespace hive {

std::string_view iri_local_name(std::string_view iri) {
  auto cut = iri.find_last_of('#');
  if (cut == std::string_view::npos) cut = iri.find_last_of('/');
  if (cut == std::string_view::npos) cut = iri.find_last_of(':');
  return cut == std::string_view::npos ? iri : iri.substr(cut + 1);
}

namespace {

struct Subject {
  std::vector<const Term*> pref_labels;
  std::vector<const Term*> alt_labels;
  std::vector<const Term*> rdfs_labels;
  std::vector<const Term*> all_labels;  // source order across the three
  std::vector<std::string> notes;
  bool typed_class = false;
  bool typed_concept = false;
  bool scaffold = false;
};

bool is_note_predicate(const std::string& p) {
  return p == vocab::kRdfsComment || p == vocab::kSkosScopeNote || p == vocab::kSkosDefinition ||
         iri_local_name(p) == "definition";
}

// Index of the preferred label: "en", then untagged, then smallest tag.
std::optional<std::size_t> choose_label(const std::vector<const Term*>& labels) {
  std::optional<std::size_t> en, untagged, tagged;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Term& t = *labels[i];
    if (trim(t.value).empty()) continue;
    const std::string lang = to_lower_ascii(t.language);
    if (lang == "en") {
      if (!en) en = i;
    } else if (lang.empty()) {
      if (!untagged) untagged = i;
    } else if (!tagged || lang < to_lower_ascii(labels[*tagged]->language)) {
      tagged = i;
    }
  }
  if (en) return en;
  if (untagged) return untagged;
  return tagged;
}

std::string default_label(std::string_view uri) {
  std::string_view s = uri;
  while (!s.empty()) {
    std::string_view local = trim(iri_local_name(s));
    if (!local.empty()) return std::string(local);
    s.remove_suffix(1);
  }
  return std::string(uri);
}

}  // namespace

CollapseResult collapse_to_skos(std::span<const Triple> triples, std::string_view ontology_id) {
  CollapseResult result;
  ConversionReport& report = result.report;

  std::unordered_map<std::string, Subject> subjects;
  std::vector<std::string> order;  // first appearance of each IRI subject
  std::unordered_set<std::string> blanks;

  const auto subject_of = [&](const std::string& iri) -> Subject& {
    auto [it, inserted] = subjects.try_emplace(iri);
    if (inserted) order.push_back(iri);
    return it->second;
  };

  for (const Triple& t : triples) {
    if (t.subject.is_blank()) blanks.insert(t.subject.value);
    if (t.object.is_blank()) blanks.insert(t.object.value);
    if (!t.subject.is_iri()) continue;
    const std::string& p = t.predicate.value;
    if (p == vocab::kRdfType && t.object.is_iri()) {
      const std::string& type = t.object.value;
      if (type == vocab::kOwlClass) subject_of(t.subject.value).typed_class = true;
      else if (type == vocab::kSkosConcept) subject_of(t.subject.value).typed_concept = true;
      else if (type == vocab::kSkosConceptScheme) subject_of(t.subject.value).scaffold = true;
      continue;
    }
    if (!t.object.is_literal()) continue;
    if (p == vocab::kSkosPrefLabel) {
      Subject& s = subject_of(t.subject.value);
      s.pref_labels.push_back(&t.object);
      s.all_labels.push_back(&t.object);
    } else if (p == vocab::kSkosAltLabel) {
      Subject& s = subject_of(t.subject.value);
      s.alt_labels.push_back(&t.object);
      s.all_labels.push_back(&t.object);
    } else if (p == vocab::kRdfsLabel) {
      Subject& s = subject_of(t.subject.value);
      s.rdfs_labels.push_back(&t.object);
      s.all_labels.push_back(&t.object);
    } else if (is_note_predicate(p)) {
      std::string note(trim(t.object.value));
      if (note.empty()) continue;
      Subject& s = subject_of(t.subject.value);
      if (std::find(s.notes.begin(), s.notes.end(), note) == s.notes.end()) s.notes.push_back(std::move(note));
    }
  }
  report.blank_nodes_skipped = blanks.size();

  std::vector<std::string> emitted;
  for (const std::string& iri : order) {
    const Subject& s = subjects.at(iri);
    if ((s.typed_class || s.typed_concept) && !s.scaffold && iri != vocab::kOwlThing) emitted.push_back(iri);
  }
  if (emitted.empty()) {
    throw Error(ErrorCode::kEmptyOntology, "no owl:Class or skos:Concept subjects found");
  }
  std::sort(emitted.begin(), emitted.end());
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < emitted.size(); ++i) index.emplace(emitted[i], i);
  const std::size_t n = emitted.size();

  // Hierarchy and association edges between emitted concepts.
  std::vector<std::set<std::size_t>> parents(n);
  std::vector<std::set<std::size_t>> related(n);
  for (const Triple& t : triples) {
    if (!t.subject.is_iri() || !t.object.is_iri()) continue;
    const std::string& p = t.predicate.value;
    const bool up = p == vocab::kRdfsSubClassOf || p == vocab::kSkosBroader;
    const bool down = p == vocab::kSkosNarrower;
    const bool rel = p == vocab::kSkosRelated;
    if (!up && !down && !rel) continue;
    auto from = index.find(t.subject.value);
    if (from == index.end()) continue;
    auto to = index.find(t.object.value);
    if (to == index.end()) {
      ++report.dangling_links_dropped;
      continue;
    }
    const std::size_t a = from->second, b = to->second;
    if (rel) {
      if (a != b) {
        related[a].insert(b);
        related[b].insert(a);
      }
      continue;
    }
    const std::size_t child = up ? a : b;
    const std::size_t parent = up ? b : a;
    if (child == parent) {
      ++report.cycles_broken;
      continue;
    }
    parents[child].insert(parent);
  }

  // Break cycles: DFS along narrower edges, roots (uri order) first, then
  // any unvisited concept in uri order; every back edge found is deleted.
  std::vector<std::set<std::size_t>> children(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t p : parents[c]) children[p].insert(c);
  }
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < n; ++i) {
    if (parents[i].empty()) starts.push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i) starts.push_back(i);
  std::vector<int> colour(n, 0);
  for (std::size_t start : starts) {
    if (colour[start] != 0) continue;
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> stack;
    const auto push = [&](std::size_t node) {
      colour[node] = 1;
      stack.emplace_back(node, std::vector<std::size_t>(children[node].rbegin(), children[node].rend()));
    };
    push(start);
    while (!stack.empty()) {
      auto& [node, pending] = stack.back();
      if (pending.empty()) {
        colour[node] = 2;
        stack.pop_back();
        continue;
      }
      const std::size_t child = pending.back();
      pending.pop_back();
      if (colour[child] == 1) {
        parents[child].erase(node);
        children[node].erase(child);
        ++report.cycles_broken;
      } else if (colour[child] == 0) {
        push(child);
      }
    }
  }

  result.skos_native = true;
  result.concepts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Subject& s = subjects.at(emitted[i]);
    if (s.typed_class) result.skos_native = false;
    Concept c;
    c.uri = emitted[i];
    c.ontology_id = std::string(ontology_id);

    const Term* chosen = nullptr;
    if (auto k = choose_label(s.pref_labels)) chosen = s.pref_labels[*k];
    else if (auto k2 = choose_label(s.rdfs_labels)) chosen = s.rdfs_labels[*k2];
    if (chosen != nullptr) {
      c.pref_label = std::string(trim(chosen->value));
    } else {
      c.pref_label = default_label(c.uri);
      ++report.labels_defaulted;
    }
    for (const Term* label : s.all_labels) {
      if (label == chosen) continue;
      std::string value(trim(label->value));
      if (value.empty() || value == c.pref_label) continue;
      if (std::find(c.alt_labels.begin(), c.alt_labels.end(), value) == c.alt_labels.end()) {
        c.alt_labels.push_back(std::move(value));
      }
    }
    c.notes = s.notes;
    for (std::size_t p : parents[i]) c.broader.push_back(emitted[p]);
    for (std::size_t ch : children[i]) c.narrower.push_back(emitted[ch]);
    for (std::size_t r : related[i]) c.related.push_back(emitted[r]);
    result.concepts.push_back(std::move(c));
  }
  report.concepts_emitted = n;
  return result;
}

}  // namespace hive
