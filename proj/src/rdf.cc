#include "hive/rdf.h"

#include "hive/error.h"
#include "hive/text.h"

namespace hive {

std::string_view to_string(RdfFormat format) {
  switch (format) {
    case RdfFormat::kRdfXml: return "rdf-xml";
    case RdfFormat::kTurtle: return "turtle";
    case RdfFormat::kNTriples: return "ntriples";
  }
  return "rdf-xml";
}

RdfFormat parse_rdf_format(std::string_view name) {
  if (name == "rdf-xml") return RdfFormat::kRdfXml;
  if (name == "turtle") return RdfFormat::kTurtle;
  if (name == "ntriples") return RdfFormat::kNTriples;
  throw Error(ErrorCode::kUnsupported, "unknown RDF format: " + std::string(name));
}

RdfFormat format_for_path(const std::filesystem::path& path) {
  const std::string ext = to_lower_ascii(path.extension().string());
  if (ext == ".rdf" || ext == ".owl" || ext == ".xml") return RdfFormat::kRdfXml;
  if (ext == ".ttl") return RdfFormat::kTurtle;
  if (ext == ".nt") return RdfFormat::kNTriples;
  throw Error(ErrorCode::kUnsupported,
              "cannot infer RDF format from extension '" + ext + "' of " + path.string());
}

void parse_rdf(std::string_view document, RdfFormat format, const TripleSink& sink,
               std::string_view base_iri) {
  switch (format) {
    case RdfFormat::kNTriples: detail::parse_ntriples(document, sink); return;
    case RdfFormat::kTurtle: detail::parse_turtle(document, sink, base_iri); return;
    case RdfFormat::kRdfXml: detail::parse_rdf_xml(document, sink, base_iri); return;
  }
}

std::vector<Triple> parse_rdf(std::string_view document, RdfFormat format,
                              std::string_view base_iri) {
  std::vector<Triple> out;
  parse_rdf(document, format, [&out](Triple&& t) { out.push_back(std::move(t)); }, base_iri);
  return out;
}

namespace {

void write_escaped(std::string& out, std::string_view s, bool iri) {
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += iri ? "\"" : "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '>': out += iri ? "\\u003E" : ">"; break;
      default: out.push_back(c);
    }
  }
}

void write_term(std::string& out, const Term& t) {
  switch (t.kind) {
    case Term::Kind::kIri:
      out.push_back('<');
      write_escaped(out, t.value, true);
      out.push_back('>');
      break;
    case Term::Kind::kBlank:
      out += "_:";
      out += t.value;
      break;
    case Term::Kind::kLiteral:
      out.push_back('"');
      write_escaped(out, t.value, false);
      out.push_back('"');
      if (!t.language.empty()) {
        out += "@" + t.language;
      } else if (!t.datatype.empty()) {
        out += "^^<" + t.datatype + ">";
      }
      break;
  }
}

}  // namespace

std::string to_ntriples(const Triple& t) {
  std::string out;
  write_term(out, t.subject);
  out.push_back(' ');
  write_term(out, t.predicate);
  out.push_back(' ');
  write_term(out, t.object);
  out += " .\n";
  return out;
}

namespace detail {

namespace {

struct IriParts {
  std::string_view scheme, authority, path, query, fragment;
  bool has_scheme = false, has_authority = false, has_query = false, has_fragment = false;
};

IriParts split_iri(std::string_view s) {
  IriParts p;
  auto colon = s.find(':');
  auto first_delim = s.find_first_of("/?#");
  if (colon != std::string_view::npos && colon > 0 && (first_delim == std::string_view::npos || colon < first_delim)) {
    p.scheme = s.substr(0, colon);
    p.has_scheme = true;
    s.remove_prefix(colon + 1);
  }
  if (s.starts_with("//")) {
    s.remove_prefix(2);
    auto end = s.find_first_of("/?#");
    p.authority = s.substr(0, end);
    p.has_authority = true;
    s = end == std::string_view::npos ? std::string_view{} : s.substr(end);
  }
  auto hash = s.find('#');
  if (hash != std::string_view::npos) {
    p.fragment = s.substr(hash + 1);
    p.has_fragment = true;
    s = s.substr(0, hash);
  }
  auto q = s.find('?');
  if (q != std::string_view::npos) {
    p.query = s.substr(q + 1);
    p.has_query = true;
    s = s.substr(0, q);
  }
  p.path = s;
  return p;
}

std::string remove_dot_segments(std::string_view path) {
  std::vector<std::string_view> out;
  const bool absolute = path.starts_with('/');
  std::size_t i = absolute ? 1 : 0;
  bool trailing = false;
  while (i <= path.size()) {
    auto next = path.find('/', i);
    std::string_view seg = path.substr(i, next == std::string_view::npos ? std::string_view::npos : next - i);
    trailing = false;
    if (seg == ".") {
      trailing = true;
    } else if (seg == "..") {
      if (!out.empty()) out.pop_back();
      trailing = true;
    } else {
      out.push_back(seg);
    }
    if (next == std::string_view::npos) break;
    i = next + 1;
  }
  std::string result = absolute ? "/" : "";
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (k > 0) result.push_back('/');
    result += out[k];
  }
  if (trailing && !result.empty() && result.back() != '/') result.push_back('/');
  return result;
}

}  // namespace

std::string resolve_iri(std::string_view base, std::string_view ref) {
  const IriParts r = split_iri(ref);
  if (r.has_scheme || base.empty()) return std::string(ref);
  const IriParts b = split_iri(base);
  std::string out(b.scheme);
  out.push_back(':');
  if (r.has_authority) {
    out += "//";
    out += r.authority;
    out += remove_dot_segments(r.path);
    if (r.has_query) out += "?" + std::string(r.query);
  } else {
    if (b.has_authority) {
      out += "//";
      out += b.authority;
    }
    if (r.path.empty()) {
      out += b.path;
      if (r.has_query) {
        out += "?" + std::string(r.query);
      } else if (b.has_query) {
        out += "?" + std::string(b.query);
      }
    } else {
      if (r.path.starts_with('/')) {
        out += remove_dot_segments(r.path);
      } else {
        std::string merged;
        if (b.has_authority && b.path.empty()) {
          merged = "/" + std::string(r.path);
        } else {
          auto slash = b.path.rfind('/');
          merged = slash == std::string_view::npos ? std::string(r.path)
                                                   : std::string(b.path.substr(0, slash + 1)) + std::string(r.path);
        }
        out += remove_dot_segments(merged);
      }
      if (r.has_query) out += "?" + std::string(r.query);
    }
  }
  if (r.has_fragment) out += "#" + std::string(r.fragment);
  return out;
}

}  // namespace detail

}  // namespace hive
