#include "hive/encoders.h"

#include <expat.h>

#include <memory>

#include "hive/error.h"
#include "json.hpp"

namespace hive {

namespace {

constexpr std::string_view kSkosNs = "http://www.w3.org/2004/02/skos/core#";
constexpr std::string_view kDctNs = "http://purl.org/dc/terms/";
constexpr std::string_view kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
constexpr std::string_view kDcNs = "http://purl.org/dc/elements/1.1/";
constexpr std::string_view kXmlDecl = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";

void check_xml_chars(std::string_view s) {
  for (unsigned char c : s) {
    if (c < 0x20 && c != '\t' && c != '\n' && c != '\r') {
      throw Error(ErrorCode::kInvalidArgument, "control character U+00" +
                                                   std::string(1, "0123456789ABCDEF"[c >> 4]) +
                                                   std::string(1, "0123456789ABCDEF"[c & 15]) +
                                                   " cannot be encoded in XML");
    }
  }
}

std::string escape(std::string_view s, bool attribute) {
  check_xml_chars(s);
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      case '\r': out += "&#13;"; break;
      case '\n': out += attribute ? "&#10;" : "\n"; break;
      case '\t': out += attribute ? "&#9;" : "\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void element(std::string& out, std::string_view name, std::string_view text) {
  out += "  <";
  out += name;
  out += '>';
  out += escape(text, false);
  out += "</";
  out += name;
  out += ">\n";
}

std::string encode_json_ld(const Concept& c) {
  nlohmann::ordered_json doc;
  doc["@context"] = {{"skos", kSkosNs}, {"dct", kDctNs}};
  doc["@id"] = c.uri;
  doc["@type"] = "skos:Concept";
  doc["skos:prefLabel"] = c.pref_label;
  if (!c.alt_labels.empty()) doc["skos:altLabel"] = c.alt_labels;
  if (!c.notes.empty()) doc["skos:note"] = c.notes;
  const auto links = [&](const char* key, const std::vector<std::string>& uris) {
    if (uris.empty()) return;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& u : uris) arr.push_back({{"@id", u}});
    doc[key] = std::move(arr);
  };
  links("skos:broader", c.broader);
  links("skos:narrower", c.narrower);
  links("skos:related", c.related);
  return doc.dump(2, ' ', false) + "\n";
}

std::string encode_skos_rdf_xml(const Concept& c) {
  std::string out(kXmlDecl);
  out += "<rdf:RDF xmlns:rdf=\"" + std::string(kRdfNs) + "\" xmlns:skos=\"" + std::string(kSkosNs) + "\">\n";
  out += "  <skos:Concept rdf:about=\"" + escape(c.uri, true) + "\">\n";
  const auto literal = [&](std::string_view name, const std::string& text) {
    out += "  ";
    element(out, name, text);
  };
  literal("skos:prefLabel", c.pref_label);
  for (const auto& s : c.alt_labels) literal("skos:altLabel", s);
  for (const auto& s : c.notes) literal("skos:note", s);
  const auto resource = [&](std::string_view name, const std::vector<std::string>& uris) {
    for (const auto& u : uris) out += "    <" + std::string(name) + " rdf:resource=\"" + escape(u, true) + "\"/>\n";
  };
  resource("skos:broader", c.broader);
  resource("skos:narrower", c.narrower);
  resource("skos:related", c.related);
  out += "  </skos:Concept>\n</rdf:RDF>\n";
  return out;
}

std::string encode_dc_xml(const Concept& c) {
  std::string out(kXmlDecl);
  out += "<metadata xmlns:dc=\"" + std::string(kDcNs) + "\">\n";
  element(out, "dc:identifier", c.uri);
  element(out, "dc:subject", c.pref_label);
  for (const auto& s : c.alt_labels) element(out, "dc:subject", s);
  for (const auto& s : c.notes) element(out, "dc:description", s);
  out += "</metadata>\n";
  return out;
}

std::string encode_plain_xml(const Concept& c) {
  std::string out(kXmlDecl);
  out += "<concept>\n";
  element(out, "uri", c.uri);
  element(out, "prefLabel", c.pref_label);
  for (const auto& s : c.alt_labels) element(out, "altLabel", s);
  for (const auto& s : c.notes) element(out, "note", s);
  for (const auto& s : c.broader) element(out, "broader", s);
  for (const auto& s : c.narrower) element(out, "narrower", s);
  for (const auto& s : c.related) element(out, "related", s);
  out += "</concept>\n";
  return out;
}

// ---------------------------------------------------------------------------

Concept decode_json_ld(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kDecode, std::string("malformed json-ld: ") + e.what());
  }
  const auto fail = [](const std::string& what) -> Error {
    return Error(ErrorCode::kDecode, "malformed json-ld: " + what);
  };
  if (!doc.is_object()) throw fail("top level is not an object");
  Concept c;
  const auto string_field = [&](const char* key) {
    auto it = doc.find(key);
    if (it == doc.end() || !it->is_string()) throw fail(std::string("missing string ") + key);
    return it->get<std::string>();
  };
  c.uri = string_field("@id");
  c.pref_label = string_field("skos:prefLabel");
  const auto strings = [&](const char* key, std::vector<std::string>& dest) {
    auto it = doc.find(key);
    if (it == doc.end()) return;
    if (!it->is_array()) throw fail(std::string(key) + " is not an array");
    for (const auto& v : *it) {
      if (!v.is_string()) throw fail(std::string(key) + " holds a non-string");
      dest.push_back(v.get<std::string>());
    }
  };
  strings("skos:altLabel", c.alt_labels);
  strings("skos:note", c.notes);
  const auto links = [&](const char* key, std::vector<std::string>& dest) {
    auto it = doc.find(key);
    if (it == doc.end()) return;
    if (!it->is_array()) throw fail(std::string(key) + " is not an array");
    for (const auto& v : *it) {
      if (v.is_object() && v.contains("@id") && v["@id"].is_string()) {
        dest.push_back(v["@id"].get<std::string>());
      } else {
        throw fail(std::string(key) + " entries need an @id");
      }
    }
  };
  links("skos:broader", c.broader);
  links("skos:narrower", c.narrower);
  links("skos:related", c.related);
  return c;
}

struct PlainXmlState {
  Concept concept_value;
  int depth = 0;
  std::string field;
  std::string text;
  bool saw_uri = false;
  bool saw_pref = false;
  std::string error;
  XML_Parser parser = nullptr;

  void fail(std::string msg) {
    if (!error.empty()) return;
    error = std::move(msg) + " at line " + std::to_string(XML_GetCurrentLineNumber(parser));
    XML_StopParser(parser, XML_FALSE);
  }
};

void XMLCALL plain_start(void* data, const XML_Char* name, const XML_Char** attrs) {
  auto* st = static_cast<PlainXmlState*>(data);
  const std::string_view n(name);
  if (st->depth == 0) {
    if (n != "concept") return st->fail("root element must be <concept>");
  } else if (st->depth == 1) {
    static const char* const kFields[] = {"uri", "prefLabel", "altLabel", "note", "broader", "narrower", "related"};
    if (std::none_of(std::begin(kFields), std::end(kFields), [&](const char* f) { return n == f; })) {
      return st->fail("unexpected element <" + std::string(n) + ">");
    }
    st->field = std::string(n);
    st->text.clear();
  } else {
    return st->fail("nested element <" + std::string(n) + "> is not allowed");
  }
  if (attrs[0] != nullptr) return st->fail("attributes are not allowed on <" + std::string(n) + ">");
  ++st->depth;
}

void XMLCALL plain_end(void* data, const XML_Char*) {
  auto* st = static_cast<PlainXmlState*>(data);
  --st->depth;
  if (st->depth != 1) return;
  Concept& c = st->concept_value;
  const std::string& f = st->field;
  if (f == "uri") {
    if (st->saw_uri) return st->fail("duplicate <uri>");
    st->saw_uri = true;
    c.uri = st->text;
  } else if (f == "prefLabel") {
    if (st->saw_pref) return st->fail("duplicate <prefLabel>");
    st->saw_pref = true;
    c.pref_label = st->text;
  } else if (f == "altLabel") {
    c.alt_labels.push_back(st->text);
  } else if (f == "note") {
    c.notes.push_back(st->text);
  } else if (f == "broader") {
    c.broader.push_back(st->text);
  } else if (f == "narrower") {
    c.narrower.push_back(st->text);
  } else if (f == "related") {
    c.related.push_back(st->text);
  }
  st->field.clear();
}

void XMLCALL plain_text(void* data, const XML_Char* s, int len) {
  auto* st = static_cast<PlainXmlState*>(data);
  if (st->depth == 2) {
    st->text.append(s, static_cast<std::size_t>(len));
    return;
  }
  for (int i = 0; i < len; ++i) {
    const char ch = s[i];
    if (ch != ' ' && ch != '\t' && ch != '\n' && ch != '\r') return st->fail("stray text inside <concept>");
  }
}

Concept decode_plain_xml(std::string_view text) {
  std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(XML_ParserCreate("UTF-8"), &XML_ParserFree);
  if (!parser) throw Error(ErrorCode::kInternal, "cannot allocate XML parser");
  PlainXmlState st;
  st.parser = parser.get();
  XML_SetUserData(parser.get(), &st);
  XML_SetElementHandler(parser.get(), plain_start, plain_end);
  XML_SetCharacterDataHandler(parser.get(), plain_text);
  const auto status = XML_Parse(parser.get(), text.data(), static_cast<int>(text.size()), XML_TRUE);
  if (!st.error.empty()) throw Error(ErrorCode::kDecode, "malformed plain-xml: " + st.error);
  if (status != XML_STATUS_OK) {
    throw Error(ErrorCode::kDecode, std::string("malformed plain-xml: ") + XML_ErrorString(XML_GetErrorCode(parser.get())) +
                                        " at line " + std::to_string(XML_GetCurrentLineNumber(parser.get())));
  }
  if (!st.saw_uri || !st.saw_pref) throw Error(ErrorCode::kDecode, "malformed plain-xml: <uri> and <prefLabel> are required");
  return std::move(st.concept_value);
}

}  // namespace

std::string_view to_string(EncodingFormat format) {
  switch (format) {
    case EncodingFormat::kJsonLd: return "json-ld";
    case EncodingFormat::kSkosRdfXml: return "skos-rdf-xml";
    case EncodingFormat::kDcXml: return "dc-xml";
    case EncodingFormat::kPlainXml: return "plain-xml";
  }
  return "json-ld";
}

EncodingFormat parse_encoding_format(std::string_view name) {
  for (auto f : {EncodingFormat::kJsonLd, EncodingFormat::kSkosRdfXml, EncodingFormat::kDcXml,
                 EncodingFormat::kPlainXml}) {
    if (name == to_string(f)) return f;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown encoding '" + std::string(name) + "' (json-ld, skos-rdf-xml, dc-xml, plain-xml)");
}

std::string_view content_type(EncodingFormat format) {
  switch (format) {
    case EncodingFormat::kJsonLd: return "application/ld+json";
    case EncodingFormat::kSkosRdfXml: return "application/rdf+xml";
    default: return "application/xml";
  }
}

std::string encode_concept(const Concept& c, EncodingFormat format) {
  switch (format) {
    case EncodingFormat::kJsonLd: return encode_json_ld(c);
    case EncodingFormat::kSkosRdfXml: return encode_skos_rdf_xml(c);
    case EncodingFormat::kDcXml: return encode_dc_xml(c);
    case EncodingFormat::kPlainXml: return encode_plain_xml(c);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown encoding");
}

Concept decode_concept(std::string_view text, EncodingFormat format, std::string_view ontology_id) {
  Concept c;
  switch (format) {
    case EncodingFormat::kJsonLd: c = decode_json_ld(text); break;
    case EncodingFormat::kPlainXml: c = decode_plain_xml(text); break;
    default:
      throw Error(ErrorCode::kUnsupported, std::string(to_string(format)) + " cannot be decoded (lossy encoding)");
  }
  c.ontology_id = std::string(ontology_id);
  return c;
}

}  // namespace hive
