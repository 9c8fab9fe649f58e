#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "hive/keywords.h"
#include "hive/tokenize.h"

namespace hive {

namespace {

// Co-occurrence window: each token is linked to this many predecessors.
constexpr std::size_t kWindow = 1;

struct TermStats {
  double tf = 0;
  double tf_acronym = 0;
  double tf_proper = 0;
  std::set<std::size_t> sentences;
  std::map<std::string, double> left;   // predecessor -> co-occurrence count
  std::map<std::string, double> right;  // successor -> co-occurrence count
  bool stopword = false;
  double score = 0;
};

bool is_acronym(const std::string& word) {
  return !word.empty() && std::all_of(word.begin(), word.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

bool is_proper(const std::string& word, std::size_t position) {
  if (position == 0 || word.size() < 2) return false;
  if (!(word[0] >= 'A' && word[0] <= 'Z')) return false;
  return std::none_of(word.begin() + 1, word.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

double median(const std::set<std::size_t>& values) {
  std::vector<std::size_t> v(values.begin(), values.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return static_cast<double>(v[n / 2]);
  return (static_cast<double>(v[n / 2 - 1]) + static_cast<double>(v[n / 2])) / 2.0;
}

double dispersion(const std::map<std::string, double>& neighbours) {
  double total = 0;
  for (const auto& [word, count] : neighbours) total += count;
  return total == 0 ? 0.0 : static_cast<double>(neighbours.size()) / total;
}

}  // namespace

std::vector<CandidatePhrase> yake_extract(std::string_view text, const ExtractionConfig& config,
                                          const StopwordList& stopwords) {
  config.validate();
  const std::vector<Sentence> sentences = tokenize(text);
  if (sentences.empty()) return {};

  // Blocks are sentence pieces between phrase delimiters.
  std::vector<std::vector<const Token*>> blocks;
  std::unordered_map<std::string, TermStats> terms;
  for (std::size_t sid = 0; sid < sentences.size(); ++sid) {
    const Sentence& sentence = sentences[sid];
    std::vector<const Token*> block;
    for (std::size_t pos = 0; pos < sentence.size(); ++pos) {
      const Token& tok = sentence[pos];
      if (tok.phrase_break && !block.empty()) {
        blocks.push_back(std::move(block));
        block.clear();
      }
      TermStats& term = terms[tok.lower];
      term.tf += 1;
      term.sentences.insert(sid);
      term.stopword = stopwords.contains(tok.lower);
      if (is_acronym(tok.text)) term.tf_acronym += 1;
      else if (is_proper(tok.text, pos)) term.tf_proper += 1;
      if (!tok.numeric) {
        const std::size_t first = block.size() > kWindow ? block.size() - kWindow : 0;
        for (std::size_t k = first; k < block.size(); ++k) {
          if (block[k]->numeric) continue;
          terms[block[k]->lower].right[tok.lower] += 1;
          term.left[block[k]->lower] += 1;
        }
      }
      block.push_back(&tok);
    }
    if (!block.empty()) blocks.push_back(std::move(block));
  }

  std::vector<double> valid_tf;
  double max_tf = 0;
  for (const auto& [word, term] : terms) {
    max_tf = std::max(max_tf, term.tf);
    if (!term.stopword) valid_tf.push_back(term.tf);
  }
  if (valid_tf.empty()) return {};
  double mean = 0;
  for (double v : valid_tf) mean += v;
  mean /= static_cast<double>(valid_tf.size());
  double variance = 0;
  for (double v : valid_tf) variance += (v - mean) * (v - mean);
  const double stddev = std::sqrt(variance / static_cast<double>(valid_tf.size()));
  const double n_sentences = static_cast<double>(sentences.size());

  for (auto& [word, term] : terms) {
    const double relatedness =
        1.0 + (dispersion(term.left) + dispersion(term.right)) * (term.tf / max_tf);
    const double frequency = (mean + stddev) > 0 ? term.tf / (mean + stddev) : 0.0;
    const double spread = static_cast<double>(term.sentences.size()) / n_sentences;
    const double casing = std::max(term.tf_acronym, term.tf_proper) / (1.0 + std::log(term.tf));
    const double position = std::log(std::log(3.0 + median(term.sentences)));
    term.score = (position * relatedness) / (casing + frequency / relatedness + spread / relatedness);
  }

  std::map<std::string, CandidatePhrase> unique;
  std::map<std::string, std::vector<const TermStats*>> members;
  for (const auto& block : blocks) {
    for (std::size_t start = 0; start < block.size(); ++start) {
      std::string key;
      for (std::size_t len = 1; len <= config.max_phrase_len && start + len <= block.size(); ++len) {
        const Token* last = block[start + len - 1];
        if (terms.at(last->lower).stopword) break;
        if (!key.empty()) key.push_back(' ');
        key += last->lower;
        if (block[start]->numeric || last->numeric) continue;
        auto [it, inserted] = unique.try_emplace(key);
        ++it->second.frequency;
        if (!inserted) continue;
        CandidatePhrase& phrase = it->second;
        phrase.normalized = key;
        phrase.text = std::string(text.substr(block[start]->byte_begin,
                                              last->byte_end - block[start]->byte_begin));
        phrase.token_count = len;
        phrase.first_offset = block[start]->offset;
        auto& m = members[key];
        for (std::size_t k = start; k < start + len; ++k) m.push_back(&terms.at(block[k]->lower));
      }
    }
  }

  std::vector<CandidatePhrase> out;
  out.reserve(unique.size());
  for (auto& [key, phrase] : unique) {
    double product = 1.0, sum = 0.0;
    for (const TermStats* t : members.at(key)) {
      product *= t->score;
      sum += t->score;
    }
    phrase.score = product / (static_cast<double>(phrase.frequency) * (1.0 + sum));
    out.push_back(std::move(phrase));
  }
  detail::rank_and_truncate(out, ScorePolarity::kAscending, config.top_k);
  return out;
}

}  // namespace hive
