#include <map>
#include <unordered_map>

#include "hive/keywords.h"
#include "hive/tokenize.h"

namespace hive {

namespace {

using Run = std::vector<const Token*>;

void trim_numeric(Run& run) {
  while (!run.empty() && run.back()->numeric) run.pop_back();
  std::size_t lead = 0;
  while (lead < run.size() && run[lead]->numeric) ++lead;
  run.erase(run.begin(), run.begin() + static_cast<std::ptrdiff_t>(lead));
}

}  // namespace

std::vector<CandidatePhrase> rake_extract(std::string_view text, const ExtractionConfig& config,
                                          const StopwordList& stopwords) {
  config.validate();
  const std::vector<Sentence> sentences = tokenize(text);

  std::vector<Run> instances;
  for (const Sentence& sentence : sentences) {
    Run run;
    const auto flush = [&] {
      trim_numeric(run);
      if (run.size() > config.max_phrase_len) run.resize(config.max_phrase_len);
      trim_numeric(run);
      if (!run.empty()) instances.push_back(run);
      run.clear();
    };
    for (const Token& tok : sentence) {
      if (tok.phrase_break) flush();
      if (stopwords.contains(tok.lower)) {
        flush();
        continue;
      }
      run.push_back(&tok);
    }
    flush();
  }

  std::unordered_map<std::string, double> freq;
  std::unordered_map<std::string, double> degree;
  for (const Run& inst : instances) {
    for (const Token* tok : inst) {
      freq[tok->lower] += 1.0;
      degree[tok->lower] += static_cast<double>(inst.size());
    }
  }

  std::map<std::string, CandidatePhrase> unique;
  for (const Run& inst : instances) {
    std::string key;
    for (const Token* tok : inst) {
      if (!key.empty()) key.push_back(' ');
      key += tok->lower;
    }
    auto [it, inserted] = unique.try_emplace(key);
    CandidatePhrase& phrase = it->second;
    ++phrase.frequency;
    if (!inserted) continue;
    phrase.normalized = key;
    phrase.text = std::string(text.substr(inst.front()->byte_begin,
                                          inst.back()->byte_end - inst.front()->byte_begin));
    phrase.token_count = inst.size();
    phrase.first_offset = inst.front()->offset;
    for (const Token* tok : inst) phrase.score += degree[tok->lower] / freq[tok->lower];
  }

  std::vector<CandidatePhrase> out;
  out.reserve(unique.size());
  for (auto& [key, phrase] : unique) out.push_back(std::move(phrase));
  detail::rank_and_truncate(out, ScorePolarity::kDescending, config.top_k);
  return out;
}

}  // namespace hive
