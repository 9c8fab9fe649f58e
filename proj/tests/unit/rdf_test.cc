#include <gtest/gtest.h>

#include "hive/error.h"
#include "hive/rdf.h"
#include "test_util.h"

namespace hive {
namespace {

using testing::fixture;
using testing::slurp;

TEST(ParseRdf, EmptyDocumentsYieldNothing) {
  EXPECT_TRUE(parse_rdf("", RdfFormat::kNTriples).empty());
  EXPECT_TRUE(parse_rdf("", RdfFormat::kTurtle).empty());
  EXPECT_TRUE(parse_rdf("# only a comment\n", RdfFormat::kTurtle).empty());
  EXPECT_TRUE(parse_rdf("<rdf:RDF xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\"/>", RdfFormat::kRdfXml)
                  .empty());
}

TEST(ParseRdf, SingleNTriplesLine) {
  auto t = parse_rdf("<http://a> <http://b> <http://c> .\n", RdfFormat::kNTriples);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].subject, Term::iri("http://a"));
  EXPECT_EQ(t[0].predicate, Term::iri("http://b"));
  EXPECT_EQ(t[0].object, Term::iri("http://c"));
}

TEST(ParseRdf, NTriplesLiteralsAndBlanks) {
  auto t = parse_rdf(
      "_:b1 <http://p> \"caf\\u00E9\"@fr .\n"
      "<http://s> <http://p> \"42\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n"
      "<http://s> <http://p> \"tab\\there\" .\n",
      RdfFormat::kNTriples);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_TRUE(t[0].subject.is_blank());
  EXPECT_EQ(t[0].object, Term::literal("caf\xC3\xA9", "fr"));
  EXPECT_EQ(t[1].object.datatype, "http://www.w3.org/2001/XMLSchema#integer");
  EXPECT_EQ(t[2].object.value, "tab\there");
}

TEST(ParseRdf, TurtleFixtureHasTwelveStatements) {
  const auto doc = slurp(fixture("rdf/materials.ttl"));
  auto t = parse_rdf(doc, RdfFormat::kTurtle);
  EXPECT_EQ(t.size(), 12u);
  // streaming form delivers the same triples in order
  std::vector<Triple> streamed;
  parse_rdf(doc, RdfFormat::kTurtle, [&](Triple&& x) { streamed.push_back(std::move(x)); });
  EXPECT_EQ(streamed, t);
}

TEST(ParseRdf, TurtleSyntaxCoverage) {
  auto t = parse_rdf(R"TTL(
    @base <http://ex.org/> .
    PREFIX ex: <http://ex.org/ns#>
    <rel> ex:p ex:o1 , ex:o2 ; a ex:C .
    ex:s ex:list ( 1 2.5 true ) .
    ex:s ex:bn [ ex:q "inner" ] .
    ex:s ex:long """multi
line""" .
  )TTL",
                     RdfFormat::kTurtle);
  // 3 + (1 + 3 first + 3 rest) + 2 + 1
  EXPECT_EQ(t.size(), 13u);
  EXPECT_EQ(t[0].subject, Term::iri("http://ex.org/rel"));
  EXPECT_EQ(t[2].predicate, Term::iri(vocab::kRdfType));
  EXPECT_EQ(t.back().object.value, "multi\nline");
}

TEST(ParseRdf, RdfXmlFixtureTripleCount) {
  // hand count: ontology 1, property 1, ChemicalEntity 4, Solvent 4,
  // Catalyst 8 (restriction node included), Metal 3, TransitionMetal 3, Zeolite 4
  auto t = parse_rdf(slurp(fixture("rdf/classes.owl")), RdfFormat::kRdfXml, "http://example.org/chem");
  EXPECT_EQ(t.size(), 28u);
  std::size_t blanks = 0;
  for (const auto& x : t) blanks += x.subject.is_blank();
  EXPECT_EQ(blanks, 3u);  // the restriction's type, onProperty, someValuesFrom
}

TEST(ParseRdf, RdfXmlLanguageAndResources) {
  auto t = parse_rdf(R"XML(<?xml version="1.0"?>
<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
         xmlns:skos="http://www.w3.org/2004/02/skos/core#" xml:base="http://ex.org/">
  <skos:Concept rdf:about="#a" xml:lang="en">
    <skos:prefLabel>Alpha</skos:prefLabel>
    <skos:broader rdf:resource="b"/>
  </skos:Concept>
</rdf:RDF>)XML",
                     RdfFormat::kRdfXml);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0].subject, Term::iri("http://ex.org/#a"));
  EXPECT_EQ(t[1].object, Term::literal("Alpha", "en"));
  EXPECT_EQ(t[2].object, Term::iri("http://ex.org/b"));
}

TEST(ParseRdf, MalformedInputReportsPosition) {
  try {
    parse_rdf("<http://a> <http://b> <http://c> .\n<http://a> <http://b> \"open .\n", RdfFormat::kNTriples);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 0u);
  }
  try {
    parse_rdf("@prefix ex: <http://ex/> .\nex:a ex:b ex:c ex:d .\n", RdfFormat::kTurtle);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    parse_rdf("<rdf:RDF xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\">\n<oops>\n</rdf:RDF>",
              RdfFormat::kRdfXml);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GE(e.line(), 2u);
  }
  EXPECT_THROW(parse_rdf("ex:a ex:b ex:c .", RdfFormat::kTurtle), ParseError);  // undeclared prefix
  EXPECT_THROW(parse_rdf("<rel> <http://b> <http://c> .", RdfFormat::kNTriples), ParseError);  // relative IRI
}

TEST(ParseRdf, FormatNames) {
  EXPECT_EQ(parse_rdf_format("turtle"), RdfFormat::kTurtle);
  EXPECT_EQ(parse_rdf_format("rdf-xml"), RdfFormat::kRdfXml);
  EXPECT_EQ(parse_rdf_format("ntriples"), RdfFormat::kNTriples);
  try {
    parse_rdf_format("owl-functional");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
  }
  EXPECT_EQ(format_for_path("a.owl"), RdfFormat::kRdfXml);
  EXPECT_EQ(format_for_path("a.RDF"), RdfFormat::kRdfXml);
  EXPECT_EQ(format_for_path("a.xml"), RdfFormat::kRdfXml);
  EXPECT_EQ(format_for_path("a.ttl"), RdfFormat::kTurtle);
  EXPECT_EQ(format_for_path("a.nt"), RdfFormat::kNTriples);
  EXPECT_THROW(format_for_path("a.ofn"), Error);
}

TEST(ParseRdf, NTriplesRoundTrip) {
  const auto doc = slurp(fixture("rdf/materials.ttl"));
  auto t = parse_rdf(doc, RdfFormat::kTurtle);
  std::string nt;
  for (const auto& x : t) nt += to_ntriples(x);
  EXPECT_EQ(parse_rdf(nt, RdfFormat::kNTriples), t);
}

TEST(ResolveIri, Rfc3986Examples) {
  const std::string base = "http://a/b/c/d;p?q";
  EXPECT_EQ(detail::resolve_iri(base, "g"), "http://a/b/c/g");
  EXPECT_EQ(detail::resolve_iri(base, "./g"), "http://a/b/c/g");
  EXPECT_EQ(detail::resolve_iri(base, "../g"), "http://a/b/g");
  EXPECT_EQ(detail::resolve_iri(base, "/g"), "http://a/g");
  EXPECT_EQ(detail::resolve_iri(base, "//g"), "http://g");
  EXPECT_EQ(detail::resolve_iri(base, "?y"), "http://a/b/c/d;p?y");
  EXPECT_EQ(detail::resolve_iri(base, "#s"), "http://a/b/c/d;p?q#s");
  EXPECT_EQ(detail::resolve_iri(base, "../../../g"), "http://a/g");
  EXPECT_EQ(detail::resolve_iri(base, "g:h"), "g:h");
}

}  // namespace
}  // namespace hive
