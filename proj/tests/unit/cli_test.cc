#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <sstream>

#include "hive/api.h"
#include "hive/ingest.h"
#include "test_util.h"

namespace hive {
namespace {

using testing::fixture;
using testing::slurp;
using testing::TempDir;

struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

class CliTest : public ::testing::Test {
 protected:
  CliRun run(const std::vector<std::string>& args) {
    std::string cmd = quote(HIVE_CLI_PATH) + " --store " + quote((dir_ / "store").string());
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += " >" + quote((dir_ / "out.txt").string()) + " 2>" + quote((dir_ / "err.txt").string());
    const int raw = std::system(cmd.c_str());
    CliRun r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(dir_ / "out.txt");
    r.err = slurp(dir_ / "err.txt");
    return r;
  }
  Json run_json(const std::vector<std::string>& args) {
    std::vector<std::string> all = {"--json"};
    all.insert(all.end(), args.begin(), args.end());
    auto r = run(all);
    EXPECT_EQ(r.status, 0) << r.err;
    return Json::parse(r.out);
  }
  void seed() {
    ASSERT_EQ(run({"ingest", fixture("rdf/materials.ttl").string(), "--id", "materials"}).status, 0);
    ASSERT_EQ(run({"ingest", fixture("rdf/classes.owl").string(), "--id", "chem", "--name", "Chemistry"}).status, 0);
  }
  TempDir dir_;
};

TEST_F(CliTest, EmptyStoreListing) {
  auto r = run({"list"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "(no ontologies)\n");
}

TEST_F(CliTest, IngestAndList) {
  seed();
  auto r = run({"list"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("chem\t6 concepts"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("materials\t3 concepts"), std::string::npos) << r.out;
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({}).status, 1);
  EXPECT_EQ(run({"frobnicate"}).status, 1);
  EXPECT_EQ(run({"ingest", "/no/such/file.ttl", "--id", "x"}).status, 1);
  EXPECT_EQ(run({"ingest", fixture("rdf/materials.ttl").string()}).status, 1);
  EXPECT_EQ(run({"roots", "ghost"}).status, 1);
  auto err = run({"search", "x", "-o", "ghost"});
  EXPECT_EQ(err.status, 1);
  EXPECT_NE(err.err.find("ghost"), std::string::npos);
  EXPECT_EQ(run({"index"}).status, 1);
  EXPECT_EQ(run({"index", "--text", "a", "--top-k", "0"}).status, 1);
  EXPECT_EQ(run({"--version-of-nothing"}).status, 1);
}

TEST_F(CliTest, CorruptStoreIsInternalError) {
  std::filesystem::create_directories(dir_ / "store");
  testing::spit(dir_ / "store" / "hive.db", std::string(8192, 'q'));
  auto r = run({"list"});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("corrupt"), std::string::npos) << r.err;
}

// --json prints exactly what the service returns for the same request.
TEST_F(CliTest, JsonParityWithApi) {
  seed();
  const auto list = run_json({"list"});
  const auto roots = run_json({"roots", "chem"});
  const auto search = run_json({"search", "metal"});
  const auto concept_j = run_json({"concept", "materials", "http://example.org/materials#Zeolite"});
  auto index = run_json({"index", "--text", "Zeolite membranes and a catalyst.", "--sort", "flat"});

  Store store(dir_ / "store");
  Api api(store);
  EXPECT_EQ(list, api.list_ontologies());
  EXPECT_EQ(roots, api.roots("chem", {}));
  EXPECT_EQ(search, api.search("metal", {}, {}));
  EXPECT_EQ(concept_j, api.concept_detail("materials", "http://example.org/materials#Zeolite"));
  IndexRequest req;
  req.text = "Zeolite membranes and a catalyst.";
  req.sort = SortMode::kFlatMerged;
  auto direct = api.index(req);
  index.erase("elapsed_ms");
  direct.erase("elapsed_ms");
  EXPECT_EQ(index, direct);
}

TEST_F(CliTest, IndexFileAndExport) {
  seed();
  auto r = run({"index", "--file", fixture("docs/a1.txt").string()});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("candidate phrase(s)"), std::string::npos);
  auto exp = run({"export-concept", "--ontology", "materials", "--uri", "http://example.org/materials#Zeolite",
                  "--format", "skos-rdf-xml"});
  EXPECT_EQ(exp.status, 0);
  EXPECT_EQ(exp.out.rfind("<?xml", 0), 0u);
  EXPECT_EQ(run({"export-concept", "--ontology", "materials", "--uri", "x", "--format", "json-ld"}).status, 1);
}

TEST_F(CliTest, DeleteOntology) {
  seed();
  EXPECT_EQ(run({"delete", "chem"}).status, 0);
  EXPECT_EQ(run({"delete", "chem"}).status, 1);
  EXPECT_EQ(run_json({"list"})["ontologies"].size(), 1u);
}

TEST_F(CliTest, BatchWritesOneLinePerDocument) {
  seed();
  std::filesystem::create_directories(dir_ / "docs");
  for (const char* f : {"a1.txt", "a2.txt", "a3_latin1.txt", "a4.html"}) {
    std::filesystem::copy_file(fixture(std::string("docs/") + f), dir_ / "docs" / f);
  }
  testing::spit(dir_ / "docs" / "broken.pdf", "%PDF");
  auto r = run({"batch", "--dir", (dir_ / "docs").string(), "--out", (dir_ / "r.jsonl").string(), "--threads", "2"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.err.find("broken.pdf"), std::string::npos);
  std::istringstream lines(slurp(dir_ / "r.jsonl"));
  std::vector<std::string> ids;
  for (std::string line; std::getline(lines, line);) {
    auto j = Json::parse(line);
    ids.push_back(j["article_id"]);
    EXPECT_TRUE(j["hits"].contains("chem"));
    EXPECT_TRUE(j["hits"].contains("materials"));
  }
  EXPECT_EQ(ids, (std::vector<std::string>{"a1", "a2", "a3_latin1", "a4"}));
}

TEST_F(CliTest, EvalReproducesStudy) {
  auto r = run({"eval", "--results", fixture("study/mofs/results.jsonl").string(), "--judgments",
                fixture("study/mofs/judgments.csv").string(), "--k", "4", "--n", "5", "--out",
                (dir_ / "summary.json").string()});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("39.01"), std::string::npos);
  auto j = Json::parse(slurp(dir_ / "summary.json"));
  EXPECT_EQ(j["totals"]["candidates"], 282);
  EXPECT_EQ(j["totals"]["relevant"], 110);
}

}  // namespace
}  // namespace hive
