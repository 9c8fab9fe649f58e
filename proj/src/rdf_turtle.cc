#include "turtle_reader.h"

#include "hive/error.h"
#include "hive/text.h"

namespace hive::detail {

namespace {

bool is_name_start(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-';
}

bool is_hex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

bool has_scheme(std::string_view iri) {
  auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  for (std::size_t i = 0; i < colon; ++i) {
    const char c = iri[i];
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (i > 0 && ((c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.'));
    if (!ok) return false;
  }
  return true;
}

}  // namespace

TurtleReader::TurtleReader(std::string_view doc, const TripleSink& sink, std::string_view base,
                           bool ntriples)
    : doc_(doc), sink_(sink), base_(base), ntriples_(ntriples) {
  // A UTF-8 byte order mark is tolerated.
  if (doc_.starts_with("\xEF\xBB\xBF")) doc_.remove_prefix(3);
}

void TurtleReader::run() {
  skip_ws();
  while (!at_end()) {
    statement();
    skip_ws();
  }
}

char TurtleReader::get() {
  if (at_end()) fail("unexpected end of input");
  const char c = doc_[pos_++];
  if (c == '\n') {
    ++line_;
    column_ = 1;
  } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
    ++column_;
  }
  return c;
}

void TurtleReader::skip_ws() {
  while (!at_end()) {
    const char c = peek();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      get();
    } else if (c == '#') {
      while (!at_end() && peek() != '\n') get();
    } else {
      break;
    }
  }
}

void TurtleReader::expect(char c) {
  skip_ws();
  if (peek() != c || at_end()) fail(std::string("expected '") + c + "'");
  get();
}

bool TurtleReader::match_keyword(std::string_view kw, bool case_insensitive) {
  if (pos_ + kw.size() > doc_.size()) return false;
  std::string_view head = doc_.substr(pos_, kw.size());
  const bool equal = case_insensitive ? to_lower_ascii(head) == to_lower_ascii(kw) : head == kw;
  if (!equal) return false;
  const char after = pos_ + kw.size() < doc_.size() ? doc_[pos_ + kw.size()] : '\0';
  if (is_name_char(after) || after == ':') return false;
  for (std::size_t i = 0; i < kw.size(); ++i) get();
  return true;
}

void TurtleReader::fail(const std::string& message) const {
  throw ParseError(std::string(ntriples_ ? "N-Triples" : "Turtle") + ": " + message, line_, column_);
}

std::string TurtleReader::fresh_blank() {
  return "hive-genid-" + std::to_string(++blank_counter_);
}

void TurtleReader::emit(const Term& s, const Term& p, const Term& o) {
  sink_(Triple{s, p, o});
}

void TurtleReader::statement() {
  if (!ntriples_) {
    if (peek() == '@') {
      get();
      if (match_keyword("prefix", false)) {
        directive_prefix(false);
        return;
      }
      if (match_keyword("base", false)) {
        directive_base(false);
        return;
      }
      fail("unknown directive");
    }
    const std::size_t save_pos = pos_, save_line = line_, save_col = column_;
    if (match_keyword("PREFIX", true)) {
      directive_prefix(true);
      return;
    }
    if (match_keyword("BASE", true)) {
      directive_base(true);
      return;
    }
    pos_ = save_pos;
    line_ = save_line;
    column_ = save_col;
  }
  triples();
  expect('.');
}

void TurtleReader::directive_prefix(bool sparql_style) {
  skip_ws();
  std::string name;
  while (!at_end() && peek() != ':') {
    const char c = peek();
    if (!is_name_char(c) && c != '.') fail("invalid prefix name");
    name.push_back(get());
  }
  expect(':');
  skip_ws();
  std::string iri = iri_ref();
  prefixes_[name] = std::move(iri);
  if (!sparql_style) expect('.');
}

void TurtleReader::directive_base(bool sparql_style) {
  skip_ws();
  base_ = iri_ref();
  if (!sparql_style) expect('.');
}

void TurtleReader::triples() {
  skip_ws();
  if (!ntriples_ && peek() == '[') {
    Term subject = blank_node_property_list();
    skip_ws();
    if (peek() != '.') predicate_object_list(subject);
    return;
  }
  Term subject = subject_term();
  predicate_object_list(subject);
}

void TurtleReader::predicate_object_list(const Term& subject) {
  for (;;) {
    Term predicate = predicate_term();
    object_list(subject, predicate);
    if (ntriples_) return;
    skip_ws();
    if (peek() != ';') return;
    while (peek() == ';') {
      get();
      skip_ws();
    }
    // A trailing ';' may close the list.
    if (peek() == '.' || peek() == ']' || at_end()) return;
  }
}

void TurtleReader::object_list(const Term& subject, const Term& predicate) {
  for (;;) {
    Term object = object_term();
    emit(subject, predicate, object);
    if (ntriples_) return;
    skip_ws();
    if (peek() != ',') return;
    get();
  }
}

Term TurtleReader::subject_term() {
  skip_ws();
  const char c = peek();
  if (c == '<') return Term::iri(iri_ref());
  if (c == '_' && peek(1) == ':') return Term::blank(blank_label());
  if (!ntriples_) {
    if (c == '(') return collection();
    if (c == '[') return blank_node_property_list();
    if (is_name_start(c) || c == ':') return Term::iri(prefixed_name());
  }
  fail("expected subject");
}

Term TurtleReader::predicate_term() {
  skip_ws();
  const char c = peek();
  if (c == '<') return Term::iri(iri_ref());
  if (!ntriples_) {
    if (c == 'a') {
      const char after = peek(1);
      if (!is_name_char(after) && after != ':' && after != '.') {
        get();
        return Term::iri(vocab::kRdfType);
      }
    }
    if (is_name_start(c) || c == ':') return Term::iri(prefixed_name());
  }
  fail("expected predicate");
}

Term TurtleReader::object_term() {
  skip_ws();
  const char c = peek();
  if (at_end()) fail("expected object");
  if (c == '<') return Term::iri(iri_ref());
  if (c == '_' && peek(1) == ':') return Term::blank(blank_label());
  if (c == '"') return literal();
  if (!ntriples_) {
    if (c == '\'') return literal();
    if (c == '(') return collection();
    if (c == '[') return blank_node_property_list();
    if ((c >= '0' && c <= '9') || c == '+' || c == '-' || (c == '.' && peek(1) >= '0' && peek(1) <= '9')) {
      return numeric_literal();
    }
    if (match_keyword("true", false)) return Term::literal("true", {}, std::string(vocab::kXsd) + "boolean");
    if (match_keyword("false", false)) return Term::literal("false", {}, std::string(vocab::kXsd) + "boolean");
    if (is_name_start(c) || c == ':') return Term::iri(prefixed_name());
  }
  fail("expected object");
}

Term TurtleReader::blank_node_property_list() {
  expect('[');
  Term node = Term::blank(fresh_blank());
  skip_ws();
  if (peek() != ']') predicate_object_list(node);
  expect(']');
  return node;
}

Term TurtleReader::collection() {
  expect('(');
  std::vector<Term> items;
  skip_ws();
  while (peek() != ')') {
    if (at_end()) fail("unterminated collection");
    items.push_back(object_term());
    skip_ws();
  }
  get();
  if (items.empty()) return Term::iri(vocab::kRdfNil);
  const Term first_pred = Term::iri(vocab::kRdfFirst);
  const Term rest_pred = Term::iri(vocab::kRdfRest);
  Term head = Term::blank(fresh_blank());
  Term node = head;
  for (std::size_t i = 0; i < items.size(); ++i) {
    emit(node, first_pred, items[i]);
    Term next = i + 1 < items.size() ? Term::blank(fresh_blank()) : Term::iri(vocab::kRdfNil);
    emit(node, rest_pred, next);
    node = next;
  }
  return head;
}

char32_t TurtleReader::read_hex(int digits) {
  char32_t cp = 0;
  for (int i = 0; i < digits; ++i) {
    const char c = get();
    if (!is_hex(c)) fail("invalid hex escape");
    cp = cp * 16 + static_cast<char32_t>(c <= '9' ? c - '0' : (c | 0x20) - 'a' + 10);
  }
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid code point in escape");
  return cp;
}

std::string TurtleReader::iri_ref() {
  if (peek() != '<') fail("expected '<'");
  get();
  std::string iri;
  for (;;) {
    if (at_end()) fail("unterminated IRI");
    const char c = get();
    if (c == '>') break;
    if (c == '\\') {
      const char e = get();
      if (e == 'u') {
        append_utf8(iri, read_hex(4));
      } else if (e == 'U') {
        append_utf8(iri, read_hex(8));
      } else {
        fail("invalid escape in IRI");
      }
      continue;
    }
    if (c == ' ' || c == '\n' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`') {
      fail("invalid character in IRI");
    }
    iri.push_back(c);
  }
  if (ntriples_) {
    if (!has_scheme(iri)) fail("relative IRI not allowed in N-Triples");
    return iri;
  }
  return has_scheme(iri) ? iri : resolve_iri(base_, iri);
}

std::string TurtleReader::prefixed_name() {
  std::string prefix;
  while (!at_end() && peek() != ':') {
    const char c = peek();
    if (!is_name_char(c) && c != '.') fail("invalid prefixed name");
    prefix.push_back(get());
  }
  if (at_end()) fail("expected ':' in prefixed name");
  get();
  auto it = prefixes_.find(prefix);
  if (it == prefixes_.end()) fail("undeclared prefix '" + prefix + "'");
  std::string local;
  for (;;) {
    const char c = peek();
    if (at_end()) break;
    if (is_name_char(c) || c == ':' || (c >= '0' && c <= '9')) {
      local.push_back(get());
    } else if (c == '.') {
      // Dots are allowed inside but never at the end of a local name.
      const char n = peek(1);
      if (is_name_char(n) || n == ':' || n == '%' || n == '\\' || (n >= '0' && n <= '9')) {
        local.push_back(get());
      } else {
        break;
      }
    } else if (c == '%') {
      local.push_back(get());
      for (int i = 0; i < 2; ++i) {
        if (!is_hex(peek())) fail("invalid percent escape");
        local.push_back(get());
      }
    } else if (c == '\\') {
      get();
      const char e = get();
      if (std::string_view("_~.-!$&'()*+,;=/?#@%").find(e) == std::string_view::npos) {
        fail("invalid local name escape");
      }
      local.push_back(e);
    } else {
      break;
    }
  }
  return it->second + local;
}

std::string TurtleReader::blank_label() {
  get();
  get();
  std::string label;
  while (!at_end()) {
    const char c = peek();
    if (is_name_char(c) || (c >= '0' && c <= '9')) {
      label.push_back(get());
    } else if (c == '.' && (is_name_char(peek(1)) || (peek(1) >= '0' && peek(1) <= '9'))) {
      label.push_back(get());
    } else {
      break;
    }
  }
  if (label.empty()) fail("empty blank node label");
  return label;
}

std::string TurtleReader::quoted_string() {
  const char quote = get();
  bool long_form = false;
  if (!ntriples_ && peek() == quote && peek(1) == quote) {
    get();
    get();
    long_form = true;
  } else if (peek() == quote) {
    get();
    return {};
  }
  std::string value;
  for (;;) {
    if (at_end()) fail("unterminated string literal");
    if (!long_form && (peek() == '\n' || peek() == '\r')) fail("newline in short string literal");
    const char c = get();
    if (c == quote) {
      if (!long_form) break;
      if (peek() == quote && peek(1) == quote) {
        // Up to two extra quotes may precede the closing delimiter.
        if (peek(2) == quote) {
          value.push_back(c);
          continue;
        }
        get();
        get();
        break;
      }
      value.push_back(c);
      continue;
    }
    if (c == '\\') {
      const char e = get();
      switch (e) {
        case 't': value.push_back('\t'); break;
        case 'b': value.push_back('\b'); break;
        case 'n': value.push_back('\n'); break;
        case 'r': value.push_back('\r'); break;
        case 'f': value.push_back('\f'); break;
        case '"': value.push_back('"'); break;
        case '\'': value.push_back('\''); break;
        case '\\': value.push_back('\\'); break;
        case 'u': append_utf8(value, read_hex(4)); break;
        case 'U': append_utf8(value, read_hex(8)); break;
        default: fail("invalid string escape");
      }
      continue;
    }
    value.push_back(c);
  }
  return value;
}

std::string TurtleReader::language_tag() {
  get();  // '@'
  std::string tag;
  while (!at_end()) {
    const char c = peek();
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-') {
      tag.push_back(get());
    } else {
      break;
    }
  }
  if (tag.empty()) fail("empty language tag");
  return tag;
}

Term TurtleReader::literal() {
  std::string value = quoted_string();
  if (peek() == '@') return Term::literal(std::move(value), language_tag());
  if (peek() == '^' && peek(1) == '^') {
    get();
    get();
    std::string type;
    if (peek() == '<') {
      type = iri_ref();
    } else if (!ntriples_) {
      type = prefixed_name();
    } else {
      fail("expected datatype IRI");
    }
    return Term::literal(std::move(value), {}, std::move(type));
  }
  return Term::literal(std::move(value));
}

Term TurtleReader::numeric_literal() {
  std::string text;
  if (peek() == '+' || peek() == '-') text.push_back(get());
  bool digits = false, dot = false, exponent = false;
  while (peek() >= '0' && peek() <= '9') {
    text.push_back(get());
    digits = true;
  }
  if (peek() == '.' && peek(1) >= '0' && peek(1) <= '9') {
    text.push_back(get());
    dot = true;
    while (peek() >= '0' && peek() <= '9') {
      text.push_back(get());
      digits = true;
    }
  }
  if (peek() == 'e' || peek() == 'E') {
    text.push_back(get());
    if (peek() == '+' || peek() == '-') text.push_back(get());
    if (!(peek() >= '0' && peek() <= '9')) fail("malformed exponent");
    while (peek() >= '0' && peek() <= '9') text.push_back(get());
    exponent = true;
  }
  if (!digits) fail("malformed number");
  const char* type = exponent ? "double" : dot ? "decimal" : "integer";
  return Term::literal(std::move(text), {}, std::string(vocab::kXsd) + type);
}

void parse_turtle(std::string_view document, const TripleSink& sink, std::string_view base_iri) {
  TurtleReader(document, sink, base_iri, false).run();
}

}  // namespace hive::detail
