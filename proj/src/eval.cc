#include "hive/eval.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <tuple>

#include "hive/error.h"
#include "hive/text.h"

namespace hive {

std::string_view to_string(Rating rating) {
  switch (rating) {
    case Rating::kRelevant: return "relevant";
    case Rating::kPartial: return "partial";
    case Rating::kNot: return "not";
  }
  return "not";
}

Rating parse_rating(std::string_view text) {
  const std::string s = normalize(text);
  if (s == "relevant" || s == "rel" || s == "r") return Rating::kRelevant;
  if (s == "partial" || s == "partially relevant" || s == "part" || s == "p") return Rating::kPartial;
  if (s == "not" || s == "not relevant" || s == "irrelevant" || s == "n") return Rating::kNot;
  throw Error(ErrorCode::kInvalidArgument, "unknown rating '" + std::string(text) + "'");
}

bool aggregate_threshold(std::span<const Rating> ratings, std::size_t k, std::size_t n) {
  if (n == 0 || k == 0 || k > n) {
    throw Error(ErrorCode::kInvalidArgument, "threshold needs 1 <= k <= n (k=" + std::to_string(k) +
                                                 ", n=" + std::to_string(n) + ")");
  }
  if (ratings.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected " + std::to_string(n) + " ratings, got " + std::to_string(ratings.size()));
  }
  const auto positive = std::count_if(ratings.begin(), ratings.end(), [](Rating r) { return r != Rating::kNot; });
  return static_cast<std::size_t>(positive) >= k;
}

double precision(std::size_t candidates, std::size_t relevant) {
  if (relevant > candidates) {
    throw Error(ErrorCode::kInvalidArgument, "relevant (" + std::to_string(relevant) +
                                                 ") exceeds candidates (" + std::to_string(candidates) + ")");
  }
  return candidates == 0 ? 0.0 : static_cast<double>(relevant) / static_cast<double>(candidates);
}

double combined_relevancy(std::size_t extracted, std::size_t relevant, std::size_t partial) {
  if (relevant + partial > extracted) {
    throw Error(ErrorCode::kInvalidArgument, "relevant + partial exceeds extracted terms");
  }
  return extracted == 0 ? 0.0 : static_cast<double>(relevant + partial) / static_cast<double>(extracted);
}

std::string format_percent(std::size_t num, std::size_t den) {
  if (den == 0) return "0.00";
  // hundredths of a percent, half up
  const unsigned long long scaled = (2ULL * 10000ULL * num + den) / (2ULL * den);
  std::string frac = std::to_string(scaled % 100);
  if (frac.size() < 2) frac.insert(frac.begin(), '0');
  return std::to_string(scaled / 100) + "." + frac;
}

CountStats count_stats(std::span<const std::size_t> values) {
  CountStats s;
  s.count = values.size();
  if (values.empty()) return s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  double sum = 0;
  for (auto v : values) sum += static_cast<double>(v);
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0;
    for (auto v : values) sq += (static_cast<double>(v) - s.mean) * (static_cast<double>(v) - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

// ---------------------------------------------------------------------------

std::vector<ArticleResult> parse_results_jsonl(std::string_view text) {
  std::vector<ArticleResult> out;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto fail = [&](const std::string& what) {
      return Error(ErrorCode::kInvalidArgument, "results line " + std::to_string(line_no) + ": " + what);
    };
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw fail(e.what());
    }
    if (!doc.is_object()) throw fail("not a JSON object");
    ArticleResult art;
    if (doc.contains("article_id") && doc["article_id"].is_string()) {
      art.article_id = doc["article_id"].get<std::string>();
    } else if (doc.contains("source") && doc["source"].is_string()) {
      art.article_id = std::filesystem::path(doc["source"].get<std::string>()).stem().string();
    }
    if (art.article_id.empty()) throw fail("missing article_id");
    if (!seen.insert(art.article_id).second) throw fail("duplicate article " + art.article_id);
    if (!doc.contains("hits") || !doc["hits"].is_object()) throw fail("missing hits object");
    for (const auto& [ont, hits] : doc["hits"].items()) {
      art.ontology_ids.push_back(ont);
      if (!hits.is_array()) throw fail("hits for " + ont + " is not an array");
      for (const auto& h : hits) {
        std::string term;
        if (h.contains("matched_phrase") && h["matched_phrase"].is_string()) {
          term = h["matched_phrase"].get<std::string>();
        } else if (h.contains("prefLabel") && h["prefLabel"].is_string()) {
          term = h["prefLabel"].get<std::string>();
        } else {
          throw fail("hit without matched_phrase or prefLabel");
        }
        art.hits.push_back({ont, normalize(term)});
      }
    }
    out.push_back(std::move(art));
  }
  return out;
}

namespace {

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, field_started = false;
  std::size_t line = 1;
  const auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  const auto end_row = [&] {
    end_field();
    if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
    row.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
    } else if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_row();
      ++line;
    } else if (c == '\r') {
      continue;
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (quoted) throw Error(ErrorCode::kInvalidArgument, "judgments: unterminated quote at line " + std::to_string(line));
  if (field_started || !field.empty() || !row.empty()) end_row();
  return rows;
}

}  // namespace

std::vector<Judgment> parse_judgments_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  const auto rows = parse_csv(text);
  static const std::vector<std::string> kHeader = {"article_id", "ontology_id", "term", "rater", "rating"};
  if (rows.empty()) throw Error(ErrorCode::kInvalidArgument, "judgments file is empty");
  std::vector<std::string> header;
  for (const auto& h : rows[0]) header.push_back(std::string(trim(h)));
  if (header != kHeader) {
    throw Error(ErrorCode::kInvalidArgument, "judgments header must be article_id,ontology_id,term,rater,rating");
  }
  std::vector<Judgment> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 5) {
      throw Error(ErrorCode::kInvalidArgument,
                  "judgments row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) + " fields");
    }
    Judgment j;
    j.article_id = std::string(trim(rows[r][0]));
    j.ontology_id = std::string(trim(rows[r][1]));
    j.term = normalize(rows[r][2]);
    j.rater = std::string(trim(rows[r][3]));
    j.rating = parse_rating(rows[r][4]);
    out.push_back(std::move(j));
  }
  return out;
}

StudySummary summarize_study(const std::vector<ArticleResult>& results, const std::vector<Judgment>& judgments,
                             std::size_t k, std::size_t n) {
  if (n == 0 || k == 0 || k > n) {
    throw Error(ErrorCode::kInvalidArgument, "threshold needs 1 <= k <= n");
  }
  using Key = std::tuple<std::string, std::string, std::string>;
  std::set<Key> known_terms;
  std::set<std::string> known_articles;
  for (const auto& art : results) {
    known_articles.insert(art.article_id);
    for (const auto& h : art.hits) known_terms.insert({art.article_id, h.ontology_id, normalize(h.term)});
  }
  std::map<Key, std::vector<Rating>> ratings;
  for (const auto& j : judgments) {
    if (!known_articles.contains(j.article_id)) {
      throw Error(ErrorCode::kInvalidArgument, "judgment references unknown article " + j.article_id);
    }
    Key key{j.article_id, j.ontology_id, normalize(j.term)};
    if (!known_terms.contains(key)) {
      throw Error(ErrorCode::kInvalidArgument, "judgment references term '" + j.term + "' not indexed for " +
                                                   j.article_id + "/" + j.ontology_id);
    }
    ratings[key].push_back(j.rating);
  }
  for (const auto& [key, rs] : ratings) {
    if (rs.size() != n) {
      throw Error(ErrorCode::kInvalidArgument, "term '" + std::get<2>(key) + "' in " + std::get<0>(key) + " has " +
                                                   std::to_string(rs.size()) + " ratings, expected " +
                                                   std::to_string(n));
    }
  }

  StudySummary s;
  s.k = k;
  s.n = n;
  std::map<std::string, PrecisionRow> by_ontology;
  CombinedRelevancy combined;
  for (const auto& art : results) {
    PrecisionRow row;
    row.id = art.article_id;
    for (const auto& ont : art.ontology_ids) by_ontology[ont].id = ont;
    for (const auto& h : art.hits) {
      PrecisionRow& ont_row = by_ontology[h.ontology_id];
      ont_row.id = h.ontology_id;
      ++row.candidates;
      ++ont_row.candidates;
      auto it = ratings.find({art.article_id, h.ontology_id, normalize(h.term)});
      if (it != ratings.end() && aggregate_threshold(it->second, k, n)) {
        ++row.relevant;
        ++ont_row.relevant;
      }
      if (n == 1 && it != ratings.end()) {
        if (it->second[0] == Rating::kRelevant) ++combined.relevant;
        if (it->second[0] == Rating::kPartial) ++combined.partial;
      }
    }
    s.per_article.push_back(std::move(row));
  }
  for (auto& [id, row] : by_ontology) s.per_ontology.push_back(row);

  const auto finish = [](PrecisionRow& row) {
    row.precision = precision(row.candidates, row.relevant);
    row.degenerate = row.candidates == 0;
  };
  std::vector<std::size_t> article_counts, ontology_counts;
  s.totals.id = "total";
  for (auto& row : s.per_article) {
    finish(row);
    article_counts.push_back(row.candidates);
    s.totals.candidates += row.candidates;
    s.totals.relevant += row.relevant;
  }
  for (auto& row : s.per_ontology) {
    finish(row);
    ontology_counts.push_back(row.candidates);
  }
  finish(s.totals);
  s.article_stats = count_stats(article_counts);
  s.ontology_stats = count_stats(ontology_counts);
  if (n == 1) {
    combined.extracted = s.totals.candidates;
    combined.value = combined_relevancy(combined.extracted, combined.relevant, combined.partial);
    s.combined = combined;
  }
  return s;
}

nlohmann::ordered_json to_json(const StudySummary& s) {
  const auto row = [](const PrecisionRow& r) {
    return nlohmann::ordered_json{{"id", r.id},
                                  {"candidates", r.candidates},
                                  {"relevant", r.relevant},
                                  {"precision", r.precision},
                                  {"precision_pct", r.percent()},
                                  {"degenerate", r.degenerate}};
  };
  const auto stats = [](const CountStats& c) {
    return nlohmann::ordered_json{
        {"count", c.count}, {"mean", c.mean}, {"stddev", c.stddev}, {"min", c.min}, {"max", c.max}};
  };
  nlohmann::ordered_json out;
  out["k"] = s.k;
  out["n"] = s.n;
  out["per_article"] = nlohmann::ordered_json::array();
  for (const auto& r : s.per_article) out["per_article"].push_back(row(r));
  out["per_ontology"] = nlohmann::ordered_json::array();
  for (const auto& r : s.per_ontology) out["per_ontology"].push_back(row(r));
  out["totals"] = row(s.totals);
  out["article_stats"] = stats(s.article_stats);
  out["ontology_stats"] = stats(s.ontology_stats);
  if (s.combined) {
    const auto& c = *s.combined;
    out["combined_relevancy"] = {{"extracted", c.extracted},
                                 {"relevant", c.relevant},
                                 {"partial", c.partial},
                                 {"value", c.value},
                                 {"pct", format_percent(c.relevant + c.partial, c.extracted)}};
  } else {
    out["combined_relevancy"] = nullptr;
  }
  return out;
}

}  // namespace hive
