#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>

namespace hive {

enum class SourceKind { kTextFile, kUrl, kRawText };
enum class TextEncoding { kUtf8, kLatin1 };

std::string_view to_string(SourceKind kind);
std::string_view to_string(TextEncoding encoding);

struct DocumentSource {
  SourceKind kind = SourceKind::kRawText;
  std::string locator;         // path, IRI, or "inline"
  std::string extracted_text;  // valid UTF-8
  std::size_t char_count = 0;  // code points in extracted_text
  TextEncoding encoding = TextEncoding::kUtf8;
};

DocumentSource from_raw_text(std::string text, std::string locator = "inline");

/// Reads a text file, decoding as UTF-8 and falling back to Latin-1.
DocumentSource load_text_file(const std::filesystem::path& path);

struct FetchOptions {
  std::chrono::seconds timeout{10};
  std::size_t max_redirects = 5;
};

/// Fetches an http(s) page and scrapes its text with html_to_text. Network
/// failures, non-2xx statuses and non-HTML content types throw kNetwork.
/// At most four fetches run concurrently per process.
DocumentSource fetch_url(const std::string& iri, const FetchOptions& options = {});

/// Structural HTML-to-text: <title> text first, script/style/comments
/// dropped, block elements become newlines, entities decoded.
std::string html_to_text(std::string_view html);

/// Extracts text from a binary document (PDF, Word) at the given path.
using ConverterHook = std::function<std::string(const std::filesystem::path&)>;

// Maps lowercase extensions (".pdf") to converter hooks.
class ConverterRegistry {
 public:
  void register_hook(std::string extension, ConverterHook hook);
  const ConverterHook* find(std::string_view extension) const;

 private:
  std::map<std::string, ConverterHook, std::less<>> hooks_;
};

/// Delegates to the hook registered for the file's extension. No hook ->
/// kUnsupported; a failing hook -> kDecode naming the file.
DocumentSource convert_binary(const std::filesystem::path& path, const ConverterRegistry& registry);

}  // namespace hive
