#include "hive/document.h"

#include <fstream>
#include <semaphore>
#include <sstream>
#include <unordered_map>

#include "hive/error.h"
#include "hive/rdf.h"
#include "hive/text.h"
#include "http.h"

namespace hive {

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::kTextFile: return "text-file";
    case SourceKind::kUrl: return "url";
    case SourceKind::kRawText: return "raw-text";
  }
  return "raw-text";
}

std::string_view to_string(TextEncoding encoding) {
  return encoding == TextEncoding::kUtf8 ? "utf-8" : "latin-1";
}

namespace {

std::pair<std::string, TextEncoding> decode_bytes(std::string bytes) {
  if (bytes.starts_with("\xEF\xBB\xBF")) bytes.erase(0, 3);
  if (is_valid_utf8(bytes)) return {std::move(bytes), TextEncoding::kUtf8};
  return {latin1_to_utf8(bytes), TextEncoding::kLatin1};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed for " + path.string());
  return buffer.str();
}

}  // namespace

DocumentSource from_raw_text(std::string text, std::string locator) {
  DocumentSource doc;
  doc.kind = SourceKind::kRawText;
  doc.locator = std::move(locator);
  auto [decoded, encoding] = decode_bytes(std::move(text));
  doc.extracted_text = std::move(decoded);
  doc.encoding = encoding;
  doc.char_count = utf8_length(doc.extracted_text);
  return doc;
}

DocumentSource load_text_file(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) throw Error(ErrorCode::kIo, path.string() + " is a directory");
  DocumentSource doc;
  doc.kind = SourceKind::kTextFile;
  doc.locator = path.string();
  auto [decoded, encoding] = decode_bytes(read_file(path));
  doc.extracted_text = std::move(decoded);
  doc.encoding = encoding;
  doc.char_count = utf8_length(doc.extracted_text);
  return doc;
}

// ---------------------------------------------------------------------------
// HTML scraping

namespace {

bool is_block_element(std::string_view tag) {
  static const char* const kBlocks[] = {
      "address", "article", "aside", "blockquote", "br", "dd", "div", "dl", "dt",
      "fieldset", "figcaption", "figure", "footer", "form", "h1", "h2", "h3", "h4",
      "h5", "h6", "header", "hr", "li", "main", "nav", "ol", "p", "pre", "section",
      "table", "tbody", "td", "tfoot", "th", "thead", "tr", "ul", "body", "html", "head"};
  for (const char* b : kBlocks) {
    if (tag == b) return true;
  }
  return false;
}

bool is_raw_text_element(std::string_view tag) {
  return tag == "script" || tag == "style" || tag == "noscript" || tag == "template";
}

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

const std::unordered_map<std::string_view, char32_t>& named_entities() {
  static const std::unordered_map<std::string_view, char32_t> table = {
      {"amp", '&'},       {"lt", '<'},         {"gt", '>'},         {"quot", '"'},
      {"apos", '\''},     {"nbsp", ' '},       {"copy", 0xA9},      {"reg", 0xAE},
      {"trade", 0x2122},  {"ndash", 0x2013},   {"mdash", 0x2014},   {"hellip", 0x2026},
      {"lsquo", 0x2018},  {"rsquo", 0x2019},   {"ldquo", 0x201C},   {"rdquo", 0x201D},
      {"laquo", 0xAB},    {"raquo", 0xBB},     {"middot", 0xB7},    {"deg", 0xB0},
      {"plusmn", 0xB1},   {"times", 0xD7},     {"divide", 0xF7},    {"micro", 0xB5},
      {"eacute", 0xE9},   {"egrave", 0xE8},    {"ecirc", 0xEA},     {"euml", 0xEB},
      {"aacute", 0xE1},   {"agrave", 0xE0},    {"acirc", 0xE2},     {"auml", 0xE4},
      {"ouml", 0xF6},     {"uuml", 0xFC},      {"szlig", 0xDF},     {"ccedil", 0xE7},
      {"iacute", 0xED},   {"oacute", 0xF3},    {"uacute", 0xFA},    {"ntilde", 0xF1},
      {"Eacute", 0xC9},   {"Auml", 0xC4},      {"Ouml", 0xD6},      {"Uuml", 0xDC},
      {"alpha", 0x3B1},   {"beta", 0x3B2},     {"gamma", 0x3B3},    {"delta", 0x3B4},
      {"mu", 0x3BC},      {"pi", 0x3C0},       {"sigma", 0x3C3},    {"Aring", 0xC5},
      {"angst", 0xC5},    {"sup2", 0xB2},      {"sup3", 0xB3},      {"frac12", 0xBD},
  };
  return table;
}

// Decodes the entity starting at html[i] == '&'; returns false when the
// text is not a recognised entity.
bool decode_entity(std::string_view html, std::size_t& i, std::string& out) {
  const auto semi = html.find(';', i + 1);
  if (semi == std::string_view::npos || semi - i > 12) return false;
  std::string_view name = html.substr(i + 1, semi - i - 1);
  char32_t cp = 0;
  if (name.starts_with('#')) {
    const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
    std::string_view digits = name.substr(hex ? 2 : 1);
    if (digits.empty()) return false;
    for (char c : digits) {
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else return false;
      cp = cp * (hex ? 16 : 10) + static_cast<char32_t>(v);
      if (cp > 0x10FFFF) return false;
    }
    if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
    if (cp == 0xA0) cp = ' ';
  } else {
    auto it = named_entities().find(name);
    if (it == named_entities().end()) return false;
    cp = it->second;
  }
  append_utf8(out, cp);
  i = semi + 1;
  return true;
}

// Accumulates text, collapsing inline whitespace and emitting one newline
// per block boundary.
class TextBuilder {
 public:
  void text(std::string_view s) {
    for (char c : s) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
        space_ = true;
      } else {
        if (space_ && !line_.empty()) line_.push_back(' ');
        space_ = false;
        line_.push_back(c);
      }
    }
  }
  void block() {
    if (!line_.empty()) {
      if (!out_.empty()) out_.push_back('\n');
      out_ += line_;
      line_.clear();
    }
    space_ = false;
  }
  std::string finish() {
    block();
    return std::move(out_);
  }

 private:
  std::string out_;
  std::string line_;
  bool space_ = false;
};

}  // namespace

std::string html_to_text(std::string_view html) {
  TextBuilder body;
  TextBuilder title;
  bool in_title = false;
  std::size_t i = 0;
  std::string pending;  // decoded character data awaiting flush
  const auto flush = [&] {
    // A decoded '<' directly before a letter would read as tag residue.
    std::string safe;
    safe.reserve(pending.size());
    for (std::size_t k = 0; k < pending.size(); ++k) {
      safe.push_back(pending[k]);
      if (pending[k] == '<' && k + 1 < pending.size() && is_alpha(pending[k + 1])) safe.push_back(' ');
    }
    (in_title ? title : body).text(safe);
    pending.clear();
  };
  while (i < html.size()) {
    const char c = html[i];
    if (c == '&') {
      if (!decode_entity(html, i, pending)) {
        pending.push_back('&');
        ++i;
      }
      continue;
    }
    if (c != '<') {
      pending.push_back(c);
      ++i;
      continue;
    }
    if (html.substr(i, 4) == "<!--") {
      flush();
      auto end = html.find("-->", i + 4);
      i = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    if (html.substr(i, 9) == "<![CDATA[") {
      auto end = html.find("]]>", i + 9);
      const std::size_t stop = end == std::string_view::npos ? html.size() : end;
      pending.append(html.substr(i + 9, stop - i - 9));
      i = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    const char next = i + 1 < html.size() ? html[i + 1] : '\0';
    const bool closing = next == '/';
    const char name_start = closing ? (i + 2 < html.size() ? html[i + 2] : '\0') : next;
    if (next == '!' || next == '?') {
      flush();
      auto end = html.find('>', i);
      i = end == std::string_view::npos ? html.size() : end + 1;
      continue;
    }
    if (!is_alpha(name_start)) {
      // Stray '<' that does not open a tag is kept as text.
      pending.push_back('<');
      ++i;
      continue;
    }
    flush();
    std::size_t j = i + (closing ? 2 : 1);
    std::string tag;
    while (j < html.size() && (is_alpha(html[j]) || (html[j] >= '0' && html[j] <= '9') || html[j] == '-' || html[j] == ':')) {
      tag.push_back(html[j]);
      ++j;
    }
    tag = to_lower_ascii(tag);
    // Skip attributes, honouring quoted values that may contain '>'.
    char quote = '\0';
    while (j < html.size()) {
      const char d = html[j];
      if (quote != '\0') {
        if (d == quote) quote = '\0';
      } else if (d == '"' || d == '\'') {
        quote = d;
      } else if (d == '>') {
        break;
      }
      ++j;
    }
    const bool self_closing = j > 0 && j < html.size() && html[j - 1] == '/';
    i = j < html.size() ? j + 1 : html.size();
    if (!closing && is_raw_text_element(tag) && !self_closing) {
      const std::string close = "</" + tag;
      std::size_t k = i;
      for (;;) {
        auto pos = html.find("</", k);
        if (pos == std::string_view::npos) {
          i = html.size();
          break;
        }
        if (to_lower_ascii(html.substr(pos, close.size())) == close) {
          auto end = html.find('>', pos);
          i = end == std::string_view::npos ? html.size() : end + 1;
          break;
        }
        k = pos + 2;
      }
      continue;
    }
    if (tag == "title") {
      in_title = !closing;
      if (closing) title.block();
      continue;
    }
    if (is_block_element(tag)) body.block();
  }
  flush();
  std::string head = title.finish();
  std::string main = body.finish();
  if (head.empty()) return main;
  if (main.empty()) return head;
  return head + "\n" + main;
}

// ---------------------------------------------------------------------------
// URL fetching

namespace {

std::counting_semaphore<4>& fetch_slots() {
  static std::counting_semaphore<4> slots(4);
  return slots;
}

struct SlotGuard {
  SlotGuard() { fetch_slots().acquire(); }
  ~SlotGuard() { fetch_slots().release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;
};

std::pair<std::string, std::string> split_origin(const std::string& iri) {
  const auto scheme_end = iri.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "not an absolute http(s) IRI: " + iri);
  }
  const std::string scheme = to_lower_ascii(iri.substr(0, scheme_end));
  if (scheme != "http" && scheme != "https") {
    throw Error(ErrorCode::kInvalidArgument, "unsupported URL scheme: " + scheme);
  }
  const auto path_start = iri.find_first_of("/?#", scheme_end + 3);
  std::string origin = iri.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "/" : iri.substr(path_start);
  if (auto hash = path.find('#'); hash != std::string::npos) path.erase(hash);
  if (path.empty() || path[0] != '/') path.insert(path.begin(), '/');
  return {origin, path};
}

}  // namespace

DocumentSource fetch_url(const std::string& iri, const FetchOptions& options) {
  SlotGuard slot;
  std::string current = iri;
  for (std::size_t hop = 0;; ++hop) {
    auto [origin, path] = split_origin(current);
    httplib::Client client(origin);
    client.set_connection_timeout(options.timeout);
    client.set_read_timeout(options.timeout);
    client.set_write_timeout(options.timeout);
    client.set_follow_location(false);
    httplib::Headers headers = {{"Accept", "text/html"}};
    auto res = client.Get(path, headers);
    if (!res) {
      throw Error(ErrorCode::kNetwork, "fetch failed for " + current + ": " + httplib::to_string(res.error()));
    }
    if (res->status >= 300 && res->status < 400 && res->has_header("Location")) {
      if (hop >= options.max_redirects) {
        throw Error(ErrorCode::kNetwork, "too many redirects fetching " + iri);
      }
      current = detail::resolve_iri(current, res->get_header_value("Location"));
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      throw Error(ErrorCode::kNetwork, "HTTP " + std::to_string(res->status) + " for " + current);
    }
    const std::string content_type = to_lower_ascii(res->get_header_value("Content-Type"));
    if (content_type.find("text/html") == std::string::npos &&
        content_type.find("application/xhtml+xml") == std::string::npos) {
      throw Error(ErrorCode::kNetwork, "non-HTML content type '" + content_type + "' for " + current);
    }
    DocumentSource doc;
    doc.kind = SourceKind::kUrl;
    doc.locator = iri;
    auto [decoded, encoding] = decode_bytes(res->body);
    doc.encoding = encoding;
    doc.extracted_text = html_to_text(decoded);
    doc.char_count = utf8_length(doc.extracted_text);
    return doc;
  }
}

// ---------------------------------------------------------------------------
// Binary formats

void ConverterRegistry::register_hook(std::string extension, ConverterHook hook) {
  hooks_[to_lower_ascii(extension)] = std::move(hook);
}

const ConverterHook* ConverterRegistry::find(std::string_view extension) const {
  auto it = hooks_.find(to_lower_ascii(extension));
  return it == hooks_.end() ? nullptr : &it->second;
}

DocumentSource convert_binary(const std::filesystem::path& path, const ConverterRegistry& registry) {
  const std::string ext = path.extension().string();
  const ConverterHook* hook = registry.find(ext);
  if (hook == nullptr) {
    throw Error(ErrorCode::kUnsupported, "no converter registered for '" + ext + "' (" + path.string() + ")");
  }
  std::string text;
  try {
    text = (*hook)(path);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kDecode, "converter failed for " + path.filename().string() + ": " + e.what());
  }
  DocumentSource doc;
  doc.kind = SourceKind::kTextFile;
  doc.locator = path.string();
  auto [decoded, encoding] = decode_bytes(std::move(text));
  doc.extracted_text = std::move(decoded);
  doc.encoding = encoding;
  doc.char_count = utf8_length(doc.extracted_text);
  return doc;
}

}  // namespace hive
