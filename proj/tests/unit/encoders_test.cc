#include <gtest/gtest.h>

#include <algorithm>

#include "generators.h"
#include "golden_concepts.h"
#include "hive/encoders.h"
#include "hive/error.h"
#include "hive/rdf.h"
#include "test_util.h"

namespace hive {
namespace {

using testing::golden;
using testing::slurp;

const std::vector<EncodingFormat> kAll = {EncodingFormat::kJsonLd, EncodingFormat::kSkosRdfXml,
                                          EncodingFormat::kDcXml, EncodingFormat::kPlainXml};

std::string golden_name(const std::string& concept_name, EncodingFormat f) {
  return concept_name + "." + std::string(to_string(f)) + (f == EncodingFormat::kJsonLd ? ".jsonld" : ".xml");
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(Encoders, MatchGoldenFiles) {
  for (const auto& g : testing::golden_concepts()) {
    for (EncodingFormat f : kAll) {
      const auto path = golden(golden_name(g.name, f));
      ASSERT_TRUE(std::filesystem::exists(path)) << path;
      EXPECT_EQ(encode_concept(g.value, f), slurp(path)) << path;
    }
  }
}

TEST(Encoders, GoldenRoundTrips) {
  for (const auto& g : testing::golden_concepts()) {
    for (EncodingFormat f : {EncodingFormat::kJsonLd, EncodingFormat::kPlainXml}) {
      EXPECT_EQ(decode_concept(slurp(golden(golden_name(g.name, f))), f, g.value.ontology_id), g.value)
          << g.name << " " << to_string(f);
    }
  }
}

TEST(Encoders, NamesAndContentTypes) {
  for (EncodingFormat f : kAll) EXPECT_EQ(parse_encoding_format(to_string(f)), f);
  EXPECT_EQ(code_of([] { parse_encoding_format("yaml"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(content_type(EncodingFormat::kJsonLd), "application/ld+json");
  EXPECT_EQ(content_type(EncodingFormat::kSkosRdfXml), "application/rdf+xml");
}

TEST(Encoders, MinimalConceptHasNoEmptyLists) {
  const auto minimal = testing::golden_concepts()[0].value;
  const std::string json = encode_concept(minimal, EncodingFormat::kJsonLd);
  EXPECT_EQ(json.find("skos:altLabel"), std::string::npos);
  EXPECT_EQ(json.find("[]"), std::string::npos);
  EXPECT_EQ(encode_concept(minimal, EncodingFormat::kPlainXml).find("<altLabels"), std::string::npos);
}

TEST(Encoders, Deterministic) {
  for (const auto& g : testing::golden_concepts()) {
    for (EncodingFormat f : kAll) EXPECT_EQ(encode_concept(g.value, f), encode_concept(g.value, f));
  }
}

TEST(Encoders, DecodeErrors) {
  const auto full = testing::golden_concepts()[1].value;
  const std::string json = encode_concept(full, EncodingFormat::kJsonLd);
  const std::string xml = encode_concept(full, EncodingFormat::kPlainXml);
  for (std::size_t cut : {std::size_t{0}, std::size_t{1}, json.size() / 2, json.size() - 3}) {
    EXPECT_EQ(code_of([&] { decode_concept(json.substr(0, cut), EncodingFormat::kJsonLd); }), ErrorCode::kDecode)
        << cut;
  }
  for (std::size_t cut : {std::size_t{0}, xml.size() / 2, xml.size() - 3}) {
    EXPECT_EQ(code_of([&] { decode_concept(xml.substr(0, cut), EncodingFormat::kPlainXml); }), ErrorCode::kDecode)
        << cut;
  }
  EXPECT_EQ(code_of([] { decode_concept("{\"@id\": 5}", EncodingFormat::kJsonLd); }), ErrorCode::kDecode);
  EXPECT_EQ(code_of([] { decode_concept("[1,2]", EncodingFormat::kJsonLd); }), ErrorCode::kDecode);
  EXPECT_EQ(code_of([&] { decode_concept(encode_concept(full, EncodingFormat::kDcXml), EncodingFormat::kDcXml); }),
            ErrorCode::kUnsupported);
  EXPECT_EQ(code_of([&] {
              decode_concept(encode_concept(full, EncodingFormat::kSkosRdfXml), EncodingFormat::kSkosRdfXml);
            }),
            ErrorCode::kUnsupported);
}

TEST(Encoders, ControlCharactersRejectedForXml) {
  Concept c = testing::golden_concepts()[0].value;
  c.pref_label = std::string("bell\x07");
  EXPECT_EQ(code_of([&] { encode_concept(c, EncodingFormat::kPlainXml); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { encode_concept(c, EncodingFormat::kSkosRdfXml); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(decode_concept(encode_concept(c, EncodingFormat::kJsonLd), EncodingFormat::kJsonLd, c.ontology_id), c);
}

// decode(encode(c)) == c for the lossless formats, and the RDF/XML form
// parses back into the same statements with the RDF reader.
TEST(EncodersProperty, RandomRoundTrips) {
  testing::Gen g(2024);
  for (int i = 0; i < 200; ++i) {
    const Concept c = testing::random_concept(g);
    for (EncodingFormat f : {EncodingFormat::kJsonLd, EncodingFormat::kPlainXml}) {
      const std::string text = encode_concept(c, f);
      EXPECT_EQ(decode_concept(text, f, "gen"), c) << to_string(f) << "\n" << text;
    }

    const auto triples = parse_rdf(encode_concept(c, EncodingFormat::kSkosRdfXml), RdfFormat::kRdfXml);
    std::vector<std::string> pref, alts, notes, broader, narrower, related;
    for (const auto& t : triples) {
      EXPECT_EQ(t.subject.value, c.uri);
      const std::string& p = t.predicate.value;
      if (p == vocab::kSkosPrefLabel) pref.push_back(t.object.value);
      else if (p == vocab::kSkosAltLabel) alts.push_back(t.object.value);
      else if (p == std::string(vocab::kSkos) + "note") notes.push_back(t.object.value);
      else if (p == vocab::kSkosBroader) broader.push_back(t.object.value);
      else if (p == vocab::kSkosNarrower) narrower.push_back(t.object.value);
      else if (p == vocab::kSkosRelated) related.push_back(t.object.value);
    }
    EXPECT_EQ(pref, std::vector<std::string>{c.pref_label});
    EXPECT_EQ(alts, c.alt_labels);
    EXPECT_EQ(notes, c.notes);
    EXPECT_EQ(broader, c.broader);
    EXPECT_EQ(narrower, c.narrower);
    EXPECT_EQ(related, c.related);

    const std::string dc = encode_concept(c, EncodingFormat::kDcXml);
    EXPECT_EQ(dc.rfind("<?xml", 0), 0u);
    EXPECT_EQ(dc.back(), '\n');
  }
}

}  // namespace
}  // namespace hive
