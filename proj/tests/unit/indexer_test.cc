#include <gtest/gtest.h>

#include <set>

#include "generators.h"
#include "hive/error.h"
#include "hive/indexer.h"
#include "hive/ingest.h"
#include "hive/text.h"
#include "oracles.h"
#include "test_util.h"

namespace hive {
namespace {

using testing::fixture;
using testing::Gen;
using testing::TempDir;

Concept flat(const std::string& id, std::size_t i, const std::string& label) {
  Concept c;
  c.uri = "http://gen.example/" + id + "/" + std::to_string(i);
  c.pref_label = label;
  return c;
}

std::string random_label(Gen& g) {
  std::string label;
  const std::size_t n = g.between(1, 3);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) label += g.chance(0.2) ? "  " : " ";
    std::string w = g.pick(testing::content_words());
    if (g.chance(0.3)) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    label += w;
  }
  return label;
}

std::set<testing::HitKey> keys(const HitMap& hits) {
  std::set<testing::HitKey> out;
  for (const auto& [id, list] : hits) {
    for (const auto& h : list) out.insert({id, h.uri, h.matched_phrase});
  }
  return out;
}

class IndexerFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    store_ = std::make_unique<Store>(dir_.path());
    ingest_file(*store_, fixture("rdf/materials.ttl"), std::nullopt, "materials");
    ingest_file(*store_, fixture("rdf/classes.owl"), std::nullopt, "chem");
  }
  TempDir dir_;
  std::unique_ptr<Store> store_;
};

TEST_F(IndexerFixture, PrefLabelHitsOnly) {
  // "molecular sieve" is an altLabel and must not match; "zeolite" matches in both ontologies.
  auto doc = from_raw_text("Zeolite. Molecular sieve. Metal-organic framework. Catalyst.");
  auto r = index_document(*store_->snapshot(), doc, {}, ExtractionConfig{});
  ASSERT_EQ(r.hits_by_ontology.size(), 2u);
  std::set<std::string> uris;
  for (const auto& [id, hits] : r.hits_by_ontology) {
    for (const auto& h : hits) {
      uris.insert(h.uri);
      EXPECT_EQ(h.matched_phrase, normalize(h.pref_label));
      EXPECT_EQ(h.ontology_id, id);
    }
  }
  EXPECT_TRUE(uris.count("http://example.org/materials#Zeolite"));
  EXPECT_TRUE(uris.count("http://example.org/materials#MOF"));
  for (const auto& u : uris) EXPECT_EQ(u.find("sieve"), std::string::npos);
  EXPECT_EQ(r.candidates_total, 4u);
  EXPECT_EQ(r.source.kind, SourceKind::kRawText);
  EXPECT_TRUE(r.warnings.empty());
}

TEST_F(IndexerFixture, SelectionAndUnknownIds) {
  auto doc = from_raw_text("Zeolite and catalyst.");
  auto r = index_document(*store_->snapshot(), doc, {"materials"}, ExtractionConfig{});
  ASSERT_EQ(r.hits_by_ontology.size(), 1u);
  EXPECT_EQ(r.hits_by_ontology.begin()->first, "materials");
  try {
    index_document(*store_->snapshot(), doc, {"materials", "nope"}, ExtractionConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
}

TEST_F(IndexerFixture, EmptyDocumentWarns) {
  auto r = index_document(*store_->snapshot(), from_raw_text("   \n"), {}, ExtractionConfig{});
  EXPECT_EQ(r.hit_count(), 0u);
  EXPECT_EQ(r.candidates_total, 0u);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.hits_by_ontology.size(), 2u);
}

TEST_F(IndexerFixture, InvalidConfig) {
  ExtractionConfig bad;
  bad.top_k = 0;
  EXPECT_THROW(index_document(*store_->snapshot(), from_raw_text("x"), {}, bad), Error);
}

TEST(DisplayWeight, Bins) {
  EXPECT_EQ(display_weight(1, 1), 5);
  std::vector<int> w;
  for (std::size_t r = 1; r <= 10; ++r) w.push_back(display_weight(r, 10));
  EXPECT_EQ(w, (std::vector<int>{5, 5, 4, 4, 3, 3, 2, 2, 1, 1}));
  EXPECT_EQ(display_weight(3, 3), 2);
  EXPECT_THROW(display_weight(0, 3), Error);
  EXPECT_THROW(display_weight(4, 3), Error);
  for (std::size_t n = 1; n < 60; ++n) {
    for (std::size_t r = 1; r <= n; ++r) {
      const int d = display_weight(r, n);
      EXPECT_GE(d, 1);
      EXPECT_LE(d, 5);
      if (r > 1) {
        EXPECT_LE(d, display_weight(r - 1, n));
      }
    }
  }
}

TEST(MatchCandidates, RankOrderAndTies) {
  TempDir dir;
  Store store(dir.path());
  store.commit_ontology({"o", "", SourceFormat::kSkosNative, 0, {}},
                        {flat("o", 2, "gas"), flat("o", 1, "Gas"), flat("o", 3, "pore")});
  std::vector<CandidatePhrase> cands = {{"pore", "pore", 1.0, 1, 0, 1}, {"gas", "gas", 4.0, 1, 5, 1}};
  auto hits = match_candidates(*store.snapshot(), cands, {}, ScorePolarity::kDescending).at("o");
  ASSERT_EQ(hits.size(), 3u);
  EXPECT_EQ(hits[0].uri, "http://gen.example/o/1");  // same phrase, uri order
  EXPECT_EQ(hits[1].uri, "http://gen.example/o/2");
  EXPECT_EQ(hits[2].uri, "http://gen.example/o/3");
  EXPECT_EQ(hits[2].rank, 3u);
  EXPECT_DOUBLE_EQ(hits[0].score, 4.0);
  auto asc = match_candidates(*store.snapshot(), cands, {}, ScorePolarity::kAscending).at("o");
  EXPECT_EQ(asc[0].uri, "http://gen.example/o/3");
}

struct World {
  TempDir dir;
  std::unique_ptr<Store> store;
  std::map<std::string, std::vector<Concept>> ontologies;
};

void populate(World& w, Gen& g, std::size_t n_ontologies, std::size_t max_concepts) {
  w.store = std::make_unique<Store>(w.dir.path());
  for (std::size_t o = 0; o < n_ontologies; ++o) {
    const std::string id = "o" + std::to_string(o);
    std::vector<Concept> concepts;
    const std::size_t n = g.between(1, max_concepts);
    for (std::size_t i = 0; i < n; ++i) concepts.push_back(flat(id, i, random_label(g)));
    w.store->commit_ontology({id, "", SourceFormat::kSkosNative, 0, {}}, concepts);
    w.ontologies[id] = concepts;
  }
}

// Matching equals a brute-force scan over every candidate and prefLabel.
TEST(IndexerProperty, MatchesBruteForceOracle) {
  Gen g(7);
  World w;
  populate(w, g, 4, 25);
  for (int round = 0; round < 150; ++round) {
    ExtractionConfig config;
    config.algorithm = g.chance(0.5) ? Algorithm::kRake : Algorithm::kYake;
    config.top_k = g.between(1, 40);
    const std::string text = testing::random_text(g, 60);
    auto result = index_document(*w.store->snapshot(), from_raw_text(text), {}, config);
    const auto cands = extract_keywords(text, config);
    std::vector<std::string> texts;
    for (const auto& c : cands) texts.push_back(c.text);
    EXPECT_EQ(keys(result.hits_by_ontology), testing::brute_force_hits(texts, w.ontologies)) << text;
    EXPECT_EQ(result.candidates_total, cands.size());

    for (const auto& [id, hits] : result.hits_by_ontology) {
      for (std::size_t i = 0; i < hits.size(); ++i) {
        EXPECT_EQ(hits[i].rank, i + 1);
        if (i > 0) {
          EXPECT_LE(hits[i].display_weight, hits[i - 1].display_weight);
          if (config.algorithm == Algorithm::kRake) {
            EXPECT_LE(hits[i].score, hits[i - 1].score);
          } else {
            EXPECT_GE(hits[i].score, hits[i - 1].score);
          }
        }
      }
    }
  }
}

// More candidates or more ontologies never lose a hit.
TEST(IndexerProperty, Monotonicity) {
  Gen g(11);
  World w;
  populate(w, g, 3, 30);
  for (int round = 0; round < 80; ++round) {
    const std::string text = testing::random_text(g, 60);
    ExtractionConfig small;
    small.top_k = g.between(1, 10);
    ExtractionConfig large = small;
    large.top_k = small.top_k + g.between(1, 20);
    const auto snap = w.store->snapshot();
    const auto doc = from_raw_text(text);
    auto a = keys(index_document(*snap, doc, {}, small).hits_by_ontology);
    auto b = keys(index_document(*snap, doc, {}, large).hits_by_ontology);
    EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end())) << text;

    auto one = keys(index_document(*snap, doc, {"o0"}, small).hits_by_ontology);
    EXPECT_TRUE(std::includes(a.begin(), a.end(), one.begin(), one.end()));
    for (const auto& k : one) EXPECT_EQ(std::get<0>(k), "o0");
  }
}

// Every sort mode is a permutation of the same hits.
TEST(IndexerProperty, SortModesPermuteHits) {
  Gen g(13);
  World w;
  populate(w, g, 3, 30);
  for (int round = 0; round < 60; ++round) {
    ExtractionConfig config;
    config.algorithm = round % 2 ? Algorithm::kYake : Algorithm::kRake;
    auto r = index_document(*w.store->snapshot(), from_raw_text(testing::random_text(g, 60)), {}, config);
    auto base = sorted_hits(r, SortMode::kByScore);
    auto as_set = [](std::vector<TermHit> v) {
      std::set<std::tuple<std::string, std::string, std::size_t>> s;
      for (auto& h : v) s.insert({h.ontology_id, h.uri, h.rank});
      return s;
    };
    EXPECT_EQ(base.size(), r.hit_count());
    for (SortMode m : {SortMode::kAlphabetical, SortMode::kByOntologyHitCount, SortMode::kFlatMerged}) {
      auto v = sorted_hits(r, m);
      EXPECT_EQ(v.size(), base.size());
      EXPECT_EQ(as_set(v), as_set(base)) << to_string(m);
    }
    auto alpha = sorted_hits(r, SortMode::kAlphabetical);
    for (std::size_t i = 1; i < alpha.size(); ++i) {
      if (alpha[i].ontology_id == alpha[i - 1].ontology_id) {
        Concept a, b;
        a.uri = alpha[i].uri;
        a.pref_label = alpha[i].pref_label;
        b.uri = alpha[i - 1].uri;
        b.pref_label = alpha[i - 1].pref_label;
        EXPECT_FALSE(sibling_less(a, b));
      } else {
        EXPECT_LT(alpha[i - 1].ontology_id, alpha[i].ontology_id);
      }
    }
    auto by_count = sorted_hits(r, SortMode::kByOntologyHitCount);
    std::vector<std::size_t> run_sizes;
    for (std::size_t i = 0; i < by_count.size(); ++i) {
      if (i == 0 || by_count[i].ontology_id != by_count[i - 1].ontology_id) run_sizes.push_back(0);
      ++run_sizes.back();
    }
    EXPECT_TRUE(std::is_sorted(run_sizes.rbegin(), run_sizes.rend()));
    auto flat_hits = sorted_hits(r, SortMode::kFlatMerged);
    for (std::size_t i = 1; i < flat_hits.size(); ++i) {
      if (config.algorithm == Algorithm::kRake) {
        EXPECT_LE(flat_hits[i].score, flat_hits[i - 1].score);
      } else {
        EXPECT_GE(flat_hits[i].score, flat_hits[i - 1].score);
      }
    }
  }
  EXPECT_EQ(parse_sort_mode("ontology-hits"), SortMode::kByOntologyHitCount);
  EXPECT_THROW(parse_sort_mode("random"), Error);
}

TEST_F(IndexerFixture, BatchKeepsOrderAndRecordsFailures) {
  std::vector<BatchInput> inputs;
  for (int i = 0; i < 6; ++i) {
    inputs.push_back({"doc" + std::to_string(i), [i] {
                        if (i == 3) throw Error(ErrorCode::kIo, "cannot read doc3");
                        return from_raw_text(i % 2 ? "Zeolite membranes." : "Catalyst.");
                      }});
  }
  auto items = index_batch(*store_->snapshot(), inputs, {}, ExtractionConfig{}, 3);
  ASSERT_EQ(items.size(), 6u);
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(items[i].locator, "doc" + std::to_string(i));
    if (i == 3) {
      EXPECT_FALSE(items[i].result.has_value());
      EXPECT_NE(items[i].error.find("doc3"), std::string::npos);
    } else {
      ASSERT_TRUE(items[i].result.has_value());
      auto single = index_document(*store_->snapshot(), inputs[i].load(), {}, ExtractionConfig{});
      EXPECT_EQ(items[i].result->hits_by_ontology, single.hits_by_ontology);
    }
  }
  std::vector<BatchInput> all_bad = {{"x", []() -> DocumentSource { throw Error(ErrorCode::kIo, "gone"); }}};
  try {
    index_batch(*store_->snapshot(), all_bad, {}, ExtractionConfig{}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  EXPECT_THROW(index_batch(*store_->snapshot(), {}, {}, ExtractionConfig{}), Error);
}

TEST(LoadDocumentFile, DispatchesOnExtension) {
  auto html = load_document_file(fixture("docs/a4.html"));
  EXPECT_EQ(html.extracted_text.find('<'), std::string::npos);
  auto txt = load_document_file(fixture("docs/a1.txt"));
  EXPECT_EQ(txt.kind, SourceKind::kTextFile);
  TempDir dir;
  testing::spit(dir / "p.pdf", "%PDF");
  EXPECT_THROW(load_document_file(dir / "p.pdf"), Error);
}

}  // namespace
}  // namespace hive
