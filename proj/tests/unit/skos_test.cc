#include <gtest/gtest.h>

#include "hive/error.h"
#include "hive/skos.h"
#include "hive/text.h"

namespace hive {
namespace {

Concept make(std::string uri, std::string label, std::vector<std::string> broader = {},
             std::vector<std::string> narrower = {}) {
  Concept c;
  c.uri = std::move(uri);
  c.pref_label = std::move(label);
  c.broader = std::move(broader);
  c.narrower = std::move(narrower);
  return c;
}

std::vector<Concept> tree() {
  return {make("u:root", "Materials", {}, {"u:b", "u:a", "u:c"}), make("u:a", "zeolite", {"u:root"}),
          make("u:b", "Alumina", {"u:root"}), make("u:c", "Zeolite", {"u:root"}), make("u:d", "beta")};
}

std::vector<std::string> labels(const std::vector<const Concept*>& v) {
  std::vector<std::string> out;
  for (const auto* c : v) out.push_back(c->pref_label);
  return out;
}

TEST(ConceptGraph, Navigation) {
  ConceptGraph g(tree());
  EXPECT_EQ(g.size(), 5u);
  EXPECT_EQ(labels(g.roots()), (std::vector<std::string>{"beta", "Materials"}));
  // case-insensitive label order, raw bytes break the zeolite tie
  EXPECT_EQ(labels(g.children("u:root")), (std::vector<std::string>{"Alumina", "Zeolite", "zeolite"}));
  ConceptGraph same({make("u:y", "gas"), make("u:x", "gas")});
  EXPECT_EQ(same.roots()[0]->uri, "u:x");  // identical labels fall back to uri
  EXPECT_TRUE(g.children("u:a").empty());
  EXPECT_EQ(g.root_uris(), (std::vector<std::string>{"u:d", "u:root"}));
  EXPECT_EQ(g.at("u:b").pref_label, "Alumina");
  EXPECT_EQ(g.find("u:missing"), nullptr);
  EXPECT_THROW(g.at("u:missing"), Error);
  EXPECT_THROW(g.children("u:missing"), Error);
}

TEST(ConceptGraph, PrefIndex) {
  ConceptGraph g(tree());
  auto hits = g.lookup_pref("zeolite");
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0]->uri, "u:a");
  EXPECT_EQ(hits[1]->uri, "u:c");
  EXPECT_TRUE(g.lookup_pref("Zeolite").empty());  // keys are normalized
  EXPECT_EQ(g.pref_index_size(), 4u);
  for (const auto& c : g.concepts()) {
    bool found = false;
    for (const auto* h : g.lookup_pref(normalize(c.pref_label))) found |= h->uri == c.uri;
    EXPECT_TRUE(found) << c.uri;
  }
}

TEST(ConceptGraph, DuplicateUriRejected) {
  try {
    ConceptGraph g({make("u:a", "A"), make("u:a", "B")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvariant);
  }
}

TEST(Invariants, DetectsEachViolation) {
  EXPECT_TRUE(check_invariants(tree()).empty());
  EXPECT_FALSE(check_invariants(std::vector<Concept>{make("u:a", "")}).empty());
  EXPECT_FALSE(check_invariants(std::vector<Concept>{make("u:a", "A", {"u:zz"})}).empty());
  // broader without reciprocal narrower
  EXPECT_FALSE(check_invariants(std::vector<Concept>{make("u:a", "A", {"u:b"}), make("u:b", "B")}).empty());
  // cycle
  EXPECT_FALSE(check_invariants(std::vector<Concept>{make("u:a", "A", {"u:b"}, {"u:b"}),
                                                     make("u:b", "B", {"u:a"}, {"u:a"})})
                   .empty());
  EXPECT_FALSE(check_invariants(std::vector<Concept>{make("u:a", "A"), make("u:a", "A2")}).empty());
}

TEST(SourceFormat, Names) {
  for (auto f : {SourceFormat::kRdfXml, SourceFormat::kTurtle, SourceFormat::kNTriples, SourceFormat::kSkosNative}) {
    EXPECT_EQ(parse_source_format(to_string(f)), f);
  }
  EXPECT_THROW(parse_source_format("csv"), Error);
}

}  // namespace
}  // namespace hive
