#include "hive/skos.h"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "hive/error.h"
#include "hive/text.h"

namespace hive {

std::string_view to_string(SourceFormat format) {
  switch (format) {
    case SourceFormat::kRdfXml: return "rdf-xml";
    case SourceFormat::kTurtle: return "turtle";
    case SourceFormat::kNTriples: return "ntriples";
    case SourceFormat::kSkosNative: return "skos-native";
  }
  return "skos-native";
}

SourceFormat parse_source_format(std::string_view name) {
  if (name == "rdf-xml") return SourceFormat::kRdfXml;
  if (name == "turtle") return SourceFormat::kTurtle;
  if (name == "ntriples") return SourceFormat::kNTriples;
  if (name == "skos-native") return SourceFormat::kSkosNative;
  throw Error(ErrorCode::kInvalidArgument, "unknown source format: " + std::string(name));
}

bool sibling_less(const Concept& a, const Concept& b) {
  const int c = compare_labels(a.pref_label, b.pref_label);
  if (c != 0) return c < 0;
  return a.uri < b.uri;
}

std::vector<std::string> check_invariants(std::span<const Concept> concepts) {
  std::vector<std::string> problems;
  std::unordered_map<std::string_view, const Concept*> by_uri;
  for (const Concept& c : concepts) {
    if (!by_uri.emplace(c.uri, &c).second) problems.push_back("duplicate uri " + c.uri);
    if (trim(c.pref_label).empty()) problems.push_back("empty prefLabel on " + c.uri);
  }
  const auto contains = [](const std::vector<std::string>& v, const std::string& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  for (const Concept& c : concepts) {
    for (const auto* list : {&c.broader, &c.narrower, &c.related}) {
      for (const std::string& target : *list) {
        if (!by_uri.contains(target)) problems.push_back("dangling link " + c.uri + " -> " + target);
      }
    }
    for (const std::string& b : c.broader) {
      if (contains(c.narrower, b)) problems.push_back("broader and narrower overlap on " + c.uri);
      auto it = by_uri.find(b);
      if (it != by_uri.end() && !contains(it->second->narrower, c.uri)) {
        problems.push_back("broader without reciprocal narrower: " + c.uri + " -> " + b);
      }
    }
    for (const std::string& n : c.narrower) {
      auto it = by_uri.find(n);
      if (it != by_uri.end() && !contains(it->second->broader, c.uri)) {
        problems.push_back("narrower without reciprocal broader: " + c.uri + " -> " + n);
      }
    }
  }
  // Cycle check over broader edges (iterative three-colour DFS).
  std::unordered_map<std::string_view, int> colour;
  for (const Concept& start : concepts) {
    if (colour[start.uri] != 0) continue;
    std::vector<std::pair<const Concept*, std::size_t>> stack{{&start, 0}};
    colour[start.uri] = 1;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next == node->broader.size()) {
        colour[node->uri] = 2;
        stack.pop_back();
        continue;
      }
      const std::string& parent = node->broader[next++];
      auto it = by_uri.find(parent);
      if (it == by_uri.end()) continue;
      int& state = colour[it->second->uri];
      if (state == 1) {
        problems.push_back("broader cycle through " + parent);
      } else if (state == 0) {
        state = 1;
        stack.emplace_back(it->second, 0);
      }
    }
  }
  return problems;
}

ConceptGraph::ConceptGraph(std::vector<Concept> concepts) : concepts_(std::move(concepts)) {
  std::sort(concepts_.begin(), concepts_.end(),
            [](const Concept& a, const Concept& b) { return a.uri < b.uri; });
  by_uri_.reserve(concepts_.size());
  for (std::size_t i = 0; i < concepts_.size(); ++i) {
    if (!by_uri_.emplace(concepts_[i].uri, i).second) {
      throw Error(ErrorCode::kInvariant, "duplicate concept uri " + concepts_[i].uri);
    }
  }
  children_.resize(concepts_.size());
  for (std::size_t i = 0; i < concepts_.size(); ++i) {
    const Concept& c = concepts_[i];
    if (c.broader.empty()) roots_.push_back(i);
    std::set<std::size_t> parents;
    for (const std::string& b : c.broader) {
      auto it = by_uri_.find(b);
      if (it != by_uri_.end()) parents.insert(it->second);
    }
    for (std::size_t p : parents) children_[p].push_back(i);
    pref_index_[normalize(c.pref_label)].push_back(i);
  }
  const auto by_label = [this](std::size_t a, std::size_t b) {
    return sibling_less(concepts_[a], concepts_[b]);
  };
  std::sort(roots_.begin(), roots_.end(), by_label);
  for (auto& kids : children_) std::sort(kids.begin(), kids.end(), by_label);
}

const Concept* ConceptGraph::find(std::string_view uri) const {
  auto it = by_uri_.find(std::string(uri));
  return it == by_uri_.end() ? nullptr : &concepts_[it->second];
}

const Concept& ConceptGraph::at(std::string_view uri) const {
  const Concept* c = find(uri);
  if (c == nullptr) throw Error(ErrorCode::kNotFound, "unknown concept uri: " + std::string(uri));
  return *c;
}

std::vector<const Concept*> ConceptGraph::roots() const {
  std::vector<const Concept*> out;
  out.reserve(roots_.size());
  for (std::size_t i : roots_) out.push_back(&concepts_[i]);
  return out;
}

std::vector<const Concept*> ConceptGraph::children(std::string_view uri) const {
  auto it = by_uri_.find(std::string(uri));
  if (it == by_uri_.end()) throw Error(ErrorCode::kNotFound, "unknown concept uri: " + std::string(uri));
  std::vector<const Concept*> out;
  for (std::size_t i : children_[it->second]) out.push_back(&concepts_[i]);
  return out;
}

std::vector<std::string> ConceptGraph::root_uris() const {
  std::vector<std::string> out;
  for (const Concept& c : concepts_) {
    if (c.broader.empty()) out.push_back(c.uri);
  }
  return out;
}

std::vector<const Concept*> ConceptGraph::lookup_pref(std::string_view normalized) const {
  std::vector<const Concept*> out;
  auto it = pref_index_.find(std::string(normalized));
  if (it == pref_index_.end()) return out;
  for (std::size_t i : it->second) out.push_back(&concepts_[i]);
  return out;
}

}  // namespace hive
