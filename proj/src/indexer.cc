#include "hive/indexer.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>
#include <unordered_set>

#include "hive/error.h"
#include "hive/text.h"

namespace hive {

std::size_t IndexingResult::hit_count() const {
  std::size_t n = 0;
  for (const auto& [id, hits] : hits_by_ontology) n += hits.size();
  return n;
}

int display_weight(std::size_t rank, std::size_t n) {
  if (rank == 0 || rank > n) throw Error(ErrorCode::kInvalidArgument, "rank out of range");
  return 5 - static_cast<int>(((rank - 1) * 5) / n);
}

HitMap match_candidates(const Snapshot& snapshot, std::span<const CandidatePhrase> candidates,
                        const std::vector<std::string>& ontology_ids, ScorePolarity polarity) {
  const std::vector<std::string> ids = snapshot.resolve_ids(ontology_ids);

  std::vector<const CandidatePhrase*> ranked;
  ranked.reserve(candidates.size());
  for (const CandidatePhrase& c : candidates) ranked.push_back(&c);
  std::stable_sort(ranked.begin(), ranked.end(), [polarity](const CandidatePhrase* a, const CandidatePhrase* b) {
    return ranks_before(*a, *b, polarity);
  });

  HitMap out;
  for (const std::string& id : ids) {
    const ConceptGraph& graph = snapshot.graph(id);
    std::vector<TermHit>& hits = out[id];
    std::unordered_set<std::string> seen;
    for (const CandidatePhrase* c : ranked) {
      const std::string key = c->normalized.empty() ? normalize(c->text) : normalize(c->normalized);
      if (key.empty() || !seen.insert(key).second) continue;
      for (const Concept* match : graph.lookup_pref(key)) {
        TermHit hit;
        hit.ontology_id = id;
        hit.uri = match->uri;
        hit.pref_label = match->pref_label;
        hit.matched_phrase = key;
        hit.score = c->score;
        hits.push_back(std::move(hit));
      }
    }
    for (std::size_t i = 0; i < hits.size(); ++i) {
      hits[i].rank = i + 1;
      hits[i].display_weight = display_weight(i + 1, hits.size());
    }
  }
  return out;
}

IndexingResult index_document(const Snapshot& snapshot, const DocumentSource& source,
                              const std::vector<std::string>& ontology_ids, const ExtractionConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  IndexingResult result;
  result.source = {source.kind, source.locator, source.char_count, source.encoding};
  result.config = config;

  std::vector<CandidatePhrase> candidates;
  if (trim(source.extracted_text).empty()) {
    result.warnings.push_back("document " + source.locator + " has no text");
  } else {
    candidates = extract_keywords(source.extracted_text, config);
  }
  result.candidates_total = candidates.size();
  result.hits_by_ontology = match_candidates(snapshot, candidates, ontology_ids, config.score_polarity());
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<BatchItem> index_batch(const Snapshot& snapshot, const std::vector<BatchInput>& inputs,
                                   const std::vector<std::string>& ontology_ids, const ExtractionConfig& config,
                                   std::size_t threads) {
  if (inputs.empty()) throw Error(ErrorCode::kInvalidArgument, "batch has no documents");
  config.validate();
  const std::vector<std::string> ids = snapshot.resolve_ids(ontology_ids);

  std::vector<BatchItem> items(inputs.size());
  std::vector<std::exception_ptr> failures(inputs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) {
      items[i].locator = inputs[i].locator;
      try {
        items[i].result = index_document(snapshot, inputs[i].load(), ids, config);
      } catch (const std::exception& e) {
        items[i].error = e.what();
        failures[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, inputs.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (std::all_of(failures.begin(), failures.end(), [](const auto& f) { return f != nullptr; })) {
    std::rethrow_exception(failures.front());
  }
  return items;
}

std::string_view to_string(SortMode mode) {
  switch (mode) {
    case SortMode::kByScore: return "score";
    case SortMode::kAlphabetical: return "alphabetical";
    case SortMode::kByOntologyHitCount: return "ontology-hits";
    case SortMode::kFlatMerged: return "flat";
  }
  return "score";
}

SortMode parse_sort_mode(std::string_view name) {
  for (SortMode m : {SortMode::kByScore, SortMode::kAlphabetical, SortMode::kByOntologyHitCount,
                     SortMode::kFlatMerged}) {
    if (name == to_string(m)) return m;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown sort mode '" + std::string(name) + "' (score, alphabetical, ontology-hits, flat)");
}

std::vector<TermHit> sorted_hits(const IndexingResult& result, SortMode mode) {
  std::vector<const std::vector<TermHit>*> groups;
  for (const auto& [id, hits] : result.hits_by_ontology) groups.push_back(&hits);
  if (mode == SortMode::kByOntologyHitCount) {
    std::stable_sort(groups.begin(), groups.end(),
                     [](const auto* a, const auto* b) { return a->size() > b->size(); });
  }
  std::vector<TermHit> out;
  for (const auto* g : groups) {
    const auto first = out.size();
    out.insert(out.end(), g->begin(), g->end());
    if (mode == SortMode::kAlphabetical) {
      std::stable_sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(),
                       [](const TermHit& a, const TermHit& b) {
                         if (int c = compare_labels(a.pref_label, b.pref_label); c != 0) return c < 0;
                         return a.uri < b.uri;
                       });
    }
  }
  if (mode == SortMode::kFlatMerged) {
    const bool descending = result.config.score_polarity() == ScorePolarity::kDescending;
    std::stable_sort(out.begin(), out.end(), [descending](const TermHit& a, const TermHit& b) {
      if (a.score != b.score) return descending ? a.score > b.score : a.score < b.score;
      if (a.ontology_id != b.ontology_id) return a.ontology_id < b.ontology_id;
      return a.rank < b.rank;
    });
  }
  return out;
}

DocumentSource load_document_file(const std::filesystem::path& path, const ConverterRegistry& converters) {
  const std::string ext = to_lower_ascii(path.extension().string());
  if (converters.find(ext) != nullptr || ext == ".pdf" || ext == ".doc" || ext == ".docx") {
    return convert_binary(path, converters);
  }
  DocumentSource doc = load_text_file(path);
  if (ext == ".html" || ext == ".htm" || ext == ".xhtml") {
    doc.extracted_text = html_to_text(doc.extracted_text);
    doc.char_count = utf8_length(doc.extracted_text);
  }
  return doc;
}

}  // namespace hive
