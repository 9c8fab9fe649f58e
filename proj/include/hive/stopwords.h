#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>

namespace hive {

// Lowercase stopword set. File format: one token per line, '#' comments.
class StopwordList {
 public:
  static constexpr std::string_view kDefaultId = "smart-en";

  StopwordList() = default;
  static StopwordList parse(std::string_view contents);
  static StopwordList from_file(const std::filesystem::path& path);

  /// Resolves a list id: the bundled "smart-en" list, or a path to a list
  /// file. Loaded lists are cached for the process lifetime.
  static std::shared_ptr<const StopwordList> get(std::string_view id);

  bool contains(std::string_view lower_token) const {
    return words_.find(std::string(lower_token)) != words_.end();
  }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

}  // namespace hive
