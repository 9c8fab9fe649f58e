#include <expat.h>

#include <exception>
#include <memory>
#include <optional>

#include "hive/error.h"
#include "hive/rdf.h"
#include "hive/text.h"

namespace hive::detail {

namespace {

constexpr char kNsSep = ' ';
const std::string kXmlNs = "http://www.w3.org/XML/1998/namespace";

std::string expand_name(const XML_Char* raw) {
  std::string name(raw);
  auto sep = name.find(kNsSep);
  if (sep == std::string::npos) return name;
  return name.substr(0, sep) + name.substr(sep + 1);
}

std::string local_part(const XML_Char* raw) {
  std::string name(raw);
  auto sep = name.find(kNsSep);
  return sep == std::string::npos ? name : name.substr(sep + 1);
}

enum class FrameKind { kRoot, kNode, kProperty, kResource, kLiteral, kCollection, kEmpty };

struct Frame {
  FrameKind kind = FrameKind::kRoot;
  std::string base;
  std::string lang;
  Term subject;                // node subject or property owner
  std::string predicate;       // property frames
  std::string datatype;        // property frames
  std::string text;            // property / literal frames
  bool has_node_child = false; // property frames
  int li_counter = 0;          // node / resource frames
  int literal_depth = 0;       // literal frames
  std::vector<Term> items;     // collection frames
};

class RdfXmlReader {
 public:
  RdfXmlReader(const TripleSink& sink, std::string_view base) : sink_(sink), base_(base) {}

  void run(std::string_view document) {
    std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
        XML_ParserCreateNS(nullptr, kNsSep), &XML_ParserFree);
    if (!parser) throw Error(ErrorCode::kInternal, "cannot allocate XML parser");
    parser_ = parser.get();
    XML_SetUserData(parser_, this);
    XML_SetElementHandler(parser_, &RdfXmlReader::on_start, &RdfXmlReader::on_end);
    XML_SetCharacterDataHandler(parser_, &RdfXmlReader::on_text);
    const auto status = XML_Parse(parser_, document.data(), static_cast<int>(document.size()), XML_TRUE);
    if (pending_) std::rethrow_exception(pending_);
    if (status != XML_STATUS_OK) {
      throw ParseError(std::string("RDF/XML: ") + XML_ErrorString(XML_GetErrorCode(parser_)),
                       XML_GetCurrentLineNumber(parser_), XML_GetCurrentColumnNumber(parser_) + 1);
    }
  }

 private:
  static void on_start(void* self, const XML_Char* name, const XML_Char** attrs) {
    auto* r = static_cast<RdfXmlReader*>(self);
    r->guard([&] { r->start(name, attrs); });
  }
  static void on_end(void* self, const XML_Char* name) {
    auto* r = static_cast<RdfXmlReader*>(self);
    r->guard([&] { r->end(name); });
  }
  static void on_text(void* self, const XML_Char* s, int len) {
    auto* r = static_cast<RdfXmlReader*>(self);
    r->guard([&] { r->text(std::string_view(s, static_cast<std::size_t>(len))); });
  }

  template <typename F>
  void guard(F&& f) {
    if (pending_) return;
    try {
      f();
    } catch (...) {
      pending_ = std::current_exception();
      XML_StopParser(parser_, XML_FALSE);
    }
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("RDF/XML: " + message, XML_GetCurrentLineNumber(parser_),
                     XML_GetCurrentColumnNumber(parser_) + 1);
  }

  struct Attr {
    std::string name;  // expanded IRI, or bare name when unqualified
    std::string value;
  };

  // Splits attributes into xml:*, rdf syntax attributes and the rest.
  struct Attrs {
    std::optional<std::string> about, id, node_id, resource, parse_type, datatype, lang, base;
    std::vector<Attr> properties;
  };

  Attrs read_attrs(const XML_Char** attrs) const {
    Attrs out;
    const std::string rdf(vocab::kRdf);
    for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
      const std::string full(attrs[i]);
      const std::string value(attrs[i + 1]);
      const auto sep = full.find(kNsSep);
      const std::string ns = sep == std::string::npos ? "" : full.substr(0, sep);
      const std::string local = sep == std::string::npos ? full : full.substr(sep + 1);
      if (ns == kXmlNs) {
        if (local == "lang") out.lang = value;
        if (local == "base") out.base = value;
        continue;
      }
      if (ns == rdf || ns.empty()) {
        if (local == "about") { out.about = value; continue; }
        if (local == "ID") { out.id = value; continue; }
        if (local == "nodeID") { out.node_id = value; continue; }
        if (local == "resource") { out.resource = value; continue; }
        if (local == "parseType") { out.parse_type = value; continue; }
        if (local == "datatype") { out.datatype = value; continue; }
        if (local == "aboutEach" || local == "aboutEachPrefix" || local == "bagID") continue;
      }
      if (ns.empty()) continue;  // unqualified attributes carry no RDF meaning
      if (local.starts_with("xml")) continue;
      out.properties.push_back({ns + local, value});
    }
    return out;
  }

  std::string fresh_blank() { return "hive-xmlgen-" + std::to_string(++blank_counter_); }

  void emit(const Term& s, const std::string& p, const Term& o) {
    sink_(Triple{s, Term::iri(p), o});
  }

  Frame inherit() const {
    Frame f;
    if (stack_.empty()) {
      f.base = base_;
    } else {
      f.base = stack_.back().base;
      f.lang = stack_.back().lang;
    }
    return f;
  }

  // Starts a node element; returns its subject.
  Term start_node(const std::string& type_iri, const Attrs& a, Frame frame) {
    if (a.base) frame.base = resolve_iri(frame.base, *a.base);
    if (a.lang) frame.lang = *a.lang;
    Term subject;
    if (a.about) {
      subject = Term::iri(resolve_iri(frame.base, *a.about));
    } else if (a.id) {
      subject = Term::iri(resolve_iri(frame.base, "#" + *a.id));
    } else if (a.node_id) {
      subject = Term::blank(*a.node_id);
    } else {
      subject = Term::blank(fresh_blank());
    }
    if (type_iri != std::string(vocab::kRdf) + "Description") {
      emit(subject, vocab::kRdfType, Term::iri(type_iri));
    }
    for (const Attr& p : a.properties) {
      if (p.name == vocab::kRdfType) {
        emit(subject, p.name, Term::iri(resolve_iri(frame.base, p.value)));
      } else {
        emit(subject, p.name, Term::literal(p.value, frame.lang));
      }
    }
    frame.kind = FrameKind::kNode;
    frame.subject = subject;
    stack_.push_back(std::move(frame));
    return subject;
  }

  void start(const XML_Char* raw_name, const XML_Char** raw_attrs) {
    const std::string name = expand_name(raw_name);
    if (!stack_.empty() && stack_.back().kind == FrameKind::kLiteral) {
      Frame& lit = stack_.back();
      lit.text += "<" + local_part(raw_name) + ">";
      ++lit.literal_depth;
      return;
    }
    const Attrs a = read_attrs(raw_attrs);
    if (stack_.empty() || stack_.back().kind == FrameKind::kRoot) {
      if (stack_.empty() && name == std::string(vocab::kRdf) + "RDF") {
        Frame root = inherit();
        if (a.base) root.base = resolve_iri(root.base, *a.base);
        if (a.lang) root.lang = *a.lang;
        root.kind = FrameKind::kRoot;
        stack_.push_back(std::move(root));
        return;
      }
      start_node(name, a, inherit());
      return;
    }
    Frame& top = stack_.back();
    switch (top.kind) {
      case FrameKind::kNode:
      case FrameKind::kResource:
        start_property(name, a);
        return;
      case FrameKind::kProperty: {
        if (top.has_node_child) fail("property element has more than one node child");
        if (!trim(top.text).empty()) fail("property element mixes text and a node");
        top.has_node_child = true;
        const Term owner = top.subject;
        const std::string predicate = top.predicate;
        Term child = start_node(name, a, inherit());
        emit(owner, predicate, child);
        return;
      }
      case FrameKind::kCollection: {
        const std::size_t index = stack_.size() - 1;
        Term child = start_node(name, a, inherit());
        stack_[index].items.push_back(child);
        return;
      }
      case FrameKind::kEmpty:
        fail("unexpected element inside an empty property element");
      default:
        fail("unexpected element");
    }
  }

  void start_property(std::string predicate, const Attrs& a) {
    Frame& owner = stack_.back();
    if (predicate == std::string(vocab::kRdf) + "li") {
      predicate = std::string(vocab::kRdf) + "_" + std::to_string(++owner.li_counter);
    }
    Frame frame = inherit();
    if (a.base) frame.base = resolve_iri(frame.base, *a.base);
    if (a.lang) frame.lang = *a.lang;
    frame.subject = owner.subject;
    frame.predicate = predicate;
    if (a.parse_type) {
      if (*a.parse_type == "Resource") {
        Term node = Term::blank(fresh_blank());
        emit(frame.subject, predicate, node);
        frame.kind = FrameKind::kResource;
        frame.subject = node;
      } else if (*a.parse_type == "Collection") {
        frame.kind = FrameKind::kCollection;
      } else {
        frame.kind = FrameKind::kLiteral;
      }
      stack_.push_back(std::move(frame));
      return;
    }
    if (a.resource || a.node_id || !a.properties.empty()) {
      Term object;
      if (a.resource) {
        object = Term::iri(resolve_iri(frame.base, *a.resource));
      } else if (a.node_id) {
        object = Term::blank(*a.node_id);
      } else {
        object = Term::blank(fresh_blank());
      }
      emit(frame.subject, predicate, object);
      for (const Attr& p : a.properties) {
        if (p.name == vocab::kRdfType) {
          emit(object, p.name, Term::iri(resolve_iri(frame.base, p.value)));
        } else {
          emit(object, p.name, Term::literal(p.value, frame.lang));
        }
      }
      frame.kind = FrameKind::kEmpty;
      stack_.push_back(std::move(frame));
      return;
    }
    frame.kind = FrameKind::kProperty;
    if (a.datatype) frame.datatype = resolve_iri(frame.base, *a.datatype);
    stack_.push_back(std::move(frame));
  }

  void end(const XML_Char* raw_name) {
    if (stack_.empty()) return;
    Frame& top = stack_.back();
    if (top.kind == FrameKind::kLiteral && top.literal_depth > 0) {
      top.text += "</" + local_part(raw_name) + ">";
      --top.literal_depth;
      return;
    }
    Frame frame = std::move(top);
    stack_.pop_back();
    switch (frame.kind) {
      case FrameKind::kProperty:
        if (!frame.has_node_child) {
          const std::string lang = frame.datatype.empty() ? frame.lang : std::string();
          emit(frame.subject, frame.predicate, Term::literal(frame.text, lang, frame.datatype));
        }
        break;
      case FrameKind::kLiteral:
        emit(frame.subject, frame.predicate, Term::literal(frame.text, {}, vocab::kRdfXmlLiteral));
        break;
      case FrameKind::kCollection: {
        if (frame.items.empty()) {
          emit(frame.subject, frame.predicate, Term::iri(vocab::kRdfNil));
          break;
        }
        Term head = Term::blank(fresh_blank());
        emit(frame.subject, frame.predicate, head);
        Term node = head;
        for (std::size_t i = 0; i < frame.items.size(); ++i) {
          emit(node, vocab::kRdfFirst, frame.items[i]);
          Term next = i + 1 < frame.items.size() ? Term::blank(fresh_blank()) : Term::iri(vocab::kRdfNil);
          emit(node, vocab::kRdfRest, next);
          node = next;
        }
        break;
      }
      default:
        break;
    }
  }

  void text(std::string_view s) {
    if (stack_.empty()) return;
    Frame& top = stack_.back();
    if (top.kind == FrameKind::kProperty) {
      top.text.append(s);
    } else if (top.kind == FrameKind::kLiteral) {
      for (char c : s) {
        if (c == '<') top.text += "&lt;";
        else if (c == '&') top.text += "&amp;";
        else top.text.push_back(c);
      }
    }
  }

  const TripleSink& sink_;
  std::string base_;
  XML_Parser parser_ = nullptr;
  std::vector<Frame> stack_;
  std::size_t blank_counter_ = 0;
  std::exception_ptr pending_;
};

}  // namespace

void parse_rdf_xml(std::string_view document, const TripleSink& sink, std::string_view base_iri) {
  if (trim(document).empty()) return;
  RdfXmlReader(sink, base_iri).run(document);
}

}  // namespace hive::detail
