#include "hive/stopwords.h"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "hive/error.h"
#include "hive/text.h"

namespace hive {

namespace detail {
extern const std::string_view kSmartEnStopwords;
}

StopwordList StopwordList::parse(std::string_view contents) {
  StopwordList list;
  std::size_t start = 0;
  while (start <= contents.size()) {
    auto end = contents.find('\n', start);
    std::string_view line = contents.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) list.words_.insert(to_lower_ascii(line));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return list;
}

StopwordList StopwordList::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read stopword list " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::shared_ptr<const StopwordList> StopwordList::get(std::string_view id) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const StopwordList>, std::less<>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(id); it != cache.end()) return it->second;
  std::shared_ptr<const StopwordList> list;
  if (id == kDefaultId) {
    list = std::make_shared<const StopwordList>(parse(detail::kSmartEnStopwords));
  } else if (std::filesystem::is_regular_file(std::filesystem::path(id))) {
    list = std::make_shared<const StopwordList>(from_file(std::filesystem::path(id)));
  } else {
    throw Error(ErrorCode::kNotFound, "unknown stopword list: " + std::string(id));
  }
  cache.emplace(std::string(id), list);
  return list;
}

}  // namespace hive
