// hive: command-line front end for the terminology engine.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hive/api.h"
#include "hive/eval.h"
#include "hive/indexer.h"
#include "hive/ingest.h"
#include "hive/service.h"
#include "hive/store.h"

namespace {

using hive::Json;

struct Options {
  std::string store;
  bool json = false;

  // ingest
  std::string file, id, format = "auto", name;
  // navigation / export
  std::string ontology, uri, encoding = "json-ld";
  std::size_t offset = 0, limit = 100;
  // search / index
  std::string query, ontologies, text, url, algorithm = "rake", sort, stopwords = "smart-en";
  std::size_t max_phrase_len = 3, top_k = 30, threads = 0;
  // batch
  std::string dir, out;
  // eval
  std::string results, judgments;
  std::size_t k = 4, n = 5;
  // serve
  std::string host = "0.0.0.0", ui;
  int port = 8080;
};

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hive::Error(hive::ErrorCode::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

hive::ExtractionConfig config_of(const Options& o) {
  hive::ExtractionConfig c;
  c.algorithm = hive::parse_algorithm(o.algorithm);
  c.max_phrase_len = o.max_phrase_len;
  c.top_k = o.top_k;
  c.stopword_list_id = o.stopwords;
  c.validate();
  return c;
}

void print_concepts(const Json& concepts) {
  for (const auto& c : concepts) {
    std::cout << "  " << c["prefLabel"].get<std::string>() << "  <" << c["uri"].get<std::string>() << ">";
    if (c.contains("matched_field") && c["matched_field"] != "prefLabel") {
      std::cout << "  (" << c["matched_field"].get<std::string>() << ")";
    }
    if (c.value("has_children", false)) std::cout << "  +";
    std::cout << "\n";
  }
}

int cmd_list(hive::Api& api, const Options& o) {
  const Json j = api.list_ontologies();
  if (o.json) return print_json(j), 0;
  if (j["ontologies"].empty()) {
    std::cout << "(no ontologies)\n";
    return 0;
  }
  for (const auto& r : j["ontologies"]) {
    std::cout << r["id"].get<std::string>() << "\t" << r["concept_count"].get<std::size_t>() << " concepts\t"
              << r["source_format"].get<std::string>() << "\t" << r["display_name"].get<std::string>() << "\n";
  }
  return 0;
}

int cmd_ingest(hive::Api& api, const Options& o) {
  const Json j = api.ingest_path(o.file, o.id, o.format, o.name);
  if (o.json) return print_json(j), 0;
  const auto& r = j["ontology"];
  const auto& rep = j["report"];
  std::cout << "ingested " << r["id"].get<std::string>() << ": " << r["concept_count"].get<std::size_t>()
            << " concepts (" << r["source_format"].get<std::string>() << "), store version "
            << j["version"].get<std::uint64_t>() << "\n";
  std::cout << "  labels defaulted " << rep["labels_defaulted"] << ", cycles broken " << rep["cycles_broken"]
            << ", dangling links dropped " << rep["dangling_links_dropped"] << ", blank nodes skipped "
            << rep["blank_nodes_skipped"] << "\n";
  return 0;
}

int cmd_roots(hive::Api& api, const Options& o) {
  const Json j = api.roots(o.ontology, {o.offset, o.limit});
  if (o.json) return print_json(j), 0;
  std::cout << o.ontology << ": " << j["total"].get<std::size_t>() << " root(s)\n";
  print_concepts(j["concepts"]);
  return 0;
}

int cmd_children(hive::Api& api, const Options& o) {
  const Json j = api.children(o.ontology, o.uri, {o.offset, o.limit});
  if (o.json) return print_json(j), 0;
  std::cout << o.uri << ": " << j["total"].get<std::size_t>() << " child(ren)\n";
  print_concepts(j["concepts"]);
  return 0;
}

int cmd_concept(hive::Api& api, const Options& o) {
  const Json j = api.concept_detail(o.ontology, o.uri);
  if (o.json) return print_json(j), 0;
  const auto& c = j["concept"];
  std::cout << "prefLabel: " << c["prefLabel"].get<std::string>() << "\nuri: " << c["uri"].get<std::string>() << "\n";
  for (const char* field : {"altLabels", "notes", "broader", "narrower", "related"}) {
    for (const auto& v : c[field]) std::cout << field << ": " << v.get<std::string>() << "\n";
  }
  return 0;
}

int cmd_delete(hive::Api& api, const Options& o) {
  const Json j = api.delete_ontology(o.ontology);
  if (o.json) return print_json(j), 0;
  std::cout << "deleted " << o.ontology << ", store version " << j["version"].get<std::uint64_t>() << "\n";
  return 0;
}

int cmd_search(hive::Api& api, const Options& o) {
  hive::Page page;
  page.offset = o.offset;
  page.limit = o.limit;
  const Json j = api.search(o.query, hive::split_ids(o.ontologies), page);
  if (o.json) return print_json(j), 0;
  for (const auto& [id, group] : j["results"].items()) {
    std::cout << "[" << id << "] " << group["total"].get<std::size_t>() << " match(es)\n";
    print_concepts(group["concepts"]);
  }
  return 0;
}

int cmd_index(hive::Api& api, const Options& o) {
  hive::IndexRequest req;
  const int given = !o.file.empty() + !o.url.empty() + !o.text.empty();
  if (given != 1) throw hive::Error(hive::ErrorCode::kInvalidArgument, "give exactly one of --file, --url, --text");
  if (!o.file.empty()) req.file = o.file;
  if (!o.url.empty()) req.url = o.url;
  if (!o.text.empty()) req.text = o.text;
  req.ontologies = hive::split_ids(o.ontologies);
  req.config = config_of(o);
  if (!o.sort.empty()) req.sort = hive::parse_sort_mode(o.sort);
  const Json j = api.index(req);
  if (o.json) return print_json(j), 0;
  std::cout << j["candidates_total"].get<std::size_t>() << " candidate phrase(s), " << j["hit_count"].get<std::size_t>()
            << " hit(s)\n";
  for (const auto& w : j["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
  const auto print_hit = [](const Json& h) {
    std::cout << "  " << h["rank"].get<std::size_t>() << ". " << h["prefLabel"].get<std::string>() << "  [w"
              << h["display_weight"].get<int>() << "]  score " << h["score"].get<double>() << "  <"
              << h["uri"].get<std::string>() << ">\n";
  };
  if (j.contains("sorted")) {
    std::cout << "sort: " << j["sort"].get<std::string>() << "\n";
    for (const auto& h : j["sorted"]) {
      std::cout << "  (" << h["ontology_id"].get<std::string>() << ")";
      print_hit(h);
    }
    return 0;
  }
  for (const auto& [id, hits] : j["hits"].items()) {
    std::cout << "[" << id << "] " << hits.size() << " hit(s)\n";
    for (const auto& h : hits) print_hit(h);
  }
  return 0;
}

int cmd_batch(hive::Store& store, const Options& o) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(o.dir)) throw hive::Error(hive::ErrorCode::kIo, "not a directory: " + o.dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(o.dir)) {
    if (entry.is_regular_file() && !entry.path().filename().string().starts_with(".")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw hive::Error(hive::ErrorCode::kInvalidArgument, "no documents in " + o.dir);
  std::vector<hive::BatchInput> inputs;
  for (const auto& f : files) {
    inputs.push_back({f.string(), [f] { return hive::load_document_file(f); }});
  }
  const auto snap = store.snapshot();
  const auto items = hive::index_batch(*snap, inputs, hive::split_ids(o.ontologies), config_of(o), o.threads);

  std::ofstream out_file;
  std::ostream* out = &std::cout;
  if (!o.out.empty() && o.out != "-") {
    out_file.open(o.out, std::ios::binary | std::ios::trunc);
    if (!out_file) throw hive::Error(hive::ErrorCode::kIo, "cannot write " + o.out);
    out = &out_file;
  }
  std::size_t ok = 0, total_candidates = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    if (!item.result) {
      std::cerr << "error: " << item.locator << ": " << item.error << "\n";
      continue;
    }
    ++ok;
    total_candidates += item.result->hit_count();
    *out << hive::batch_line_json(*item.result, files[i].stem().string()).dump() << "\n";
  }
  out->flush();
  if (!*out) throw hive::Error(hive::ErrorCode::kIo, "write failed for " + o.out);
  std::cerr << "indexed " << ok << " of " << items.size() << " document(s), " << total_candidates
            << " candidate term(s)\n";
  return 0;
}

int cmd_export(hive::Api& api, const Options& o) {
  std::cout << api.encoding(o.ontology, o.uri, o.encoding).body;
  return 0;
}

int cmd_eval(const Options& o) {
  const auto results = hive::parse_results_jsonl(read_all(o.results));
  const auto judgments = hive::parse_judgments_csv(read_all(o.judgments));
  const auto summary = hive::summarize_study(results, judgments, o.k, o.n);
  const std::string doc = hive::to_json(summary).dump(2) + "\n";
  if (!o.out.empty() && o.out != "-") {
    std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
    if (!(f << doc)) throw hive::Error(hive::ErrorCode::kIo, "cannot write " + o.out);
  }
  if (o.json || o.out.empty()) {
    std::cout << doc;
    return 0;
  }
  const auto row = [](const hive::PrecisionRow& r) {
    std::printf("  %-16s %6zu %6zu %8s%s\n", r.id.c_str(), r.candidates, r.relevant, r.percent().c_str(),
                r.degenerate ? "  (no candidates)" : "");
  };
  std::printf("  %-16s %6s %6s %8s\n", "article", "cand", "rel", "prec%");
  for (const auto& r : summary.per_article) row(r);
  std::printf("  %-16s %6s %6s %8s\n", "ontology", "cand", "rel", "prec%");
  for (const auto& r : summary.per_ontology) row(r);
  row(summary.totals);
  std::printf("  per article: mean %.2f sd %.2f (min %zu, max %zu)\n", summary.article_stats.mean,
              summary.article_stats.stddev, summary.article_stats.min, summary.article_stats.max);
  std::printf("  per ontology: mean %.2f sd %.2f (min %zu, max %zu)\n", summary.ontology_stats.mean,
              summary.ontology_stats.stddev, summary.ontology_stats.min, summary.ontology_stats.max);
  if (summary.combined) {
    const auto& c = *summary.combined;
    std::printf("  combined relevancy %s%% (%zu relevant + %zu partial of %zu)\n",
                hive::format_percent(c.relevant + c.partial, c.extracted).c_str(), c.relevant, c.partial,
                c.extracted);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hive: multi-ontology SKOS terminology engine"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--store", o.store, "store directory (default $HIVE_STORE or ./hive-store)");
  app.add_flag("--json", o.json, "print the JSON API response");

  const auto extraction = [&](CLI::App* sub) {
    sub->add_option("--ontologies,-o", o.ontologies, "comma-separated ontology ids (default all)");
    sub->add_option("--algorithm", o.algorithm, "rake or yake")->capture_default_str();
    sub->add_option("--max-phrase-len", o.max_phrase_len)->capture_default_str();
    sub->add_option("--top-k", o.top_k)->capture_default_str();
    sub->add_option("--stopwords", o.stopwords, "stopword list id or file")->capture_default_str();
  };
  const auto paging = [&](CLI::App* sub) {
    sub->add_option("--offset", o.offset)->capture_default_str();
    sub->add_option("--limit", o.limit)->capture_default_str()->check(CLI::Range(1, 10000));
  };

  auto* ingest = app.add_subcommand("ingest", "ingest an RDF/OWL/SKOS file as one ontology");
  ingest->add_option("file", o.file)->required();
  ingest->add_option("--id", o.id)->required();
  ingest->add_option("--format", o.format, "auto, rdf-xml, turtle, ntriples")->capture_default_str();
  ingest->add_option("--name", o.name, "display name");

  auto* list = app.add_subcommand("list", "list ingested ontologies");

  auto* roots = app.add_subcommand("roots", "top concepts of an ontology");
  roots->add_option("ontology", o.ontology)->required();
  paging(roots);
  auto* children = app.add_subcommand("children", "narrower concepts");
  children->add_option("ontology", o.ontology)->required();
  children->add_option("uri", o.uri)->required();
  paging(children);
  auto* concept_cmd = app.add_subcommand("concept", "show one concept");
  concept_cmd->add_option("ontology", o.ontology)->required();
  concept_cmd->add_option("uri", o.uri)->required();
  auto* del = app.add_subcommand("delete", "remove an ontology");
  del->add_option("ontology", o.ontology)->required();

  auto* search = app.add_subcommand("search", "search prefLabel, altLabel and notes");
  search->add_option("query", o.query)->required();
  search->add_option("--ontologies,-o", o.ontologies, "comma-separated ontology ids (default all)");
  paging(search);

  auto* index = app.add_subcommand("index", "index one document against ontologies");
  index->add_option("--file", o.file);
  index->add_option("--url", o.url);
  index->add_option("--text", o.text);
  index->add_option("--sort", o.sort, "score, alphabetical, ontology-hits, flat");
  extraction(index);

  auto* batch = app.add_subcommand("batch", "index every document in a directory to JSONL");
  batch->add_option("--dir", o.dir)->required();
  batch->add_option("--out", o.out, "JSONL output (default stdout)");
  batch->add_option("--threads", o.threads, "worker threads (default hardware)");
  extraction(batch);

  auto* exp = app.add_subcommand("export-concept", "encode one concept");
  exp->add_option("--ontology", o.ontology)->required();
  exp->add_option("--uri", o.uri)->required();
  exp->add_option("--format", o.encoding, "json-ld, skos-rdf-xml, dc-xml, plain-xml")->capture_default_str();

  auto* eval = app.add_subcommand("eval", "relevance statistics from batch results and judgments");
  eval->add_option("--results", o.results)->required();
  eval->add_option("--judgments", o.judgments)->required();
  eval->add_option("--k", o.k)->capture_default_str();
  eval->add_option("--n", o.n)->capture_default_str();
  eval->add_option("--out", o.out, "summary.json path");

  auto* serve = app.add_subcommand("serve", "run the HTTP/JSON service");
  serve->add_option("--port", o.port)->capture_default_str()->check(CLI::Range(0, 65535));
  serve->add_option("--host", o.host)->capture_default_str();
  serve->add_option("--ui", o.ui, "static UI directory served under /ui");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (eval->parsed()) return cmd_eval(o);
    hive::Store store(hive::default_store_path(o.store));
    hive::Api api(store);
    if (ingest->parsed()) return cmd_ingest(api, o);
    if (list->parsed()) return cmd_list(api, o);
    if (roots->parsed()) return cmd_roots(api, o);
    if (children->parsed()) return cmd_children(api, o);
    if (concept_cmd->parsed()) return cmd_concept(api, o);
    if (del->parsed()) return cmd_delete(api, o);
    if (search->parsed()) return cmd_search(api, o);
    if (index->parsed()) return cmd_index(api, o);
    if (batch->parsed()) return cmd_batch(store, o);
    if (exp->parsed()) return cmd_export(api, o);
    if (serve->parsed()) {
      hive::ServiceOptions so;
      so.host = o.host;
      so.port = o.port;
      so.ui_dir = o.ui;
      hive::serve_until_signal(api, so);
      return 0;
    }
  } catch (const hive::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_user_error() ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
