#include "hive/store.h"

#include <sqlite3.h>

#include <cstdlib>
#include <set>

#include "hive/error.h"
#include "hive/text.h"
#include "json.hpp"

namespace hive {

namespace {

constexpr int kSchemaVersion = 1;

constexpr const char* kSchema = R"SQL(
CREATE TABLE IF NOT EXISTS meta (
  key TEXT PRIMARY KEY,
  value TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS ontologies (
  id TEXT PRIMARY KEY,
  display_name TEXT NOT NULL,
  source_format TEXT NOT NULL,
  concept_count INTEGER NOT NULL
);
CREATE TABLE IF NOT EXISTS concepts (
  ontology_id TEXT NOT NULL,
  uri TEXT NOT NULL,
  pref_label TEXT NOT NULL,
  alt_labels TEXT NOT NULL,
  notes TEXT NOT NULL,
  broader TEXT NOT NULL,
  narrower TEXT NOT NULL,
  related TEXT NOT NULL,
  PRIMARY KEY (ontology_id, uri)
);
CREATE TABLE IF NOT EXISTS pref_index (
  ontology_id TEXT NOT NULL,
  normalized TEXT NOT NULL,
  uri TEXT NOT NULL,
  PRIMARY KEY (ontology_id, normalized, uri)
);
)SQL";

// RAII prepared statement.
class Statement {
 public:
  Statement(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK) {
      throw Error(ErrorCode::kInternal, std::string("sqlite prepare: ") + sqlite3_errmsg(db));
    }
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  Statement& bind(int index, std::string_view text) {
    check(sqlite3_bind_text(stmt_, index, text.data(), static_cast<int>(text.size()), SQLITE_TRANSIENT));
    return *this;
  }
  Statement& bind(int index, std::int64_t value) {
    check(sqlite3_bind_int64(stmt_, index, value));
    return *this;
  }

  // True while rows remain.
  bool step() {
    const int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw Error(rc == SQLITE_CORRUPT || rc == SQLITE_NOTADB ? ErrorCode::kCorrupt : ErrorCode::kInternal,
                std::string("sqlite step: ") + sqlite3_errmsg(db_));
  }
  void run() {
    step();
    sqlite3_reset(stmt_);
    sqlite3_clear_bindings(stmt_);
  }

  std::string text(int col) const {
    const auto* p = reinterpret_cast<const char*>(sqlite3_column_text(stmt_, col));
    return p ? std::string(p, static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col))) : std::string();
  }
  std::int64_t integer(int col) const { return sqlite3_column_int64(stmt_, col); }

 private:
  void check(int rc) {
    if (rc != SQLITE_OK) throw Error(ErrorCode::kInternal, std::string("sqlite bind: ") + sqlite3_errmsg(db_));
  }
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

std::string to_json_array(const std::vector<std::string>& values) {
  return nlohmann::json(values).dump();
}

std::vector<std::string> from_json_array(const std::string& text) {
  try {
    return nlohmann::json::parse(text).get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorrupt, std::string("store holds a malformed list column: ") + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<OntologyRecord> Snapshot::list_ontologies() const {
  std::vector<OntologyRecord> out;
  out.reserve(ontologies_.size());
  for (const auto& [id, stored] : ontologies_) out.push_back(stored.record);
  return out;
}

std::vector<std::string> Snapshot::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, stored] : ontologies_) out.push_back(id);
  return out;
}

const StoredOntology* Snapshot::find(std::string_view id) const {
  auto it = ontologies_.find(id);
  return it == ontologies_.end() ? nullptr : &it->second;
}

const StoredOntology& Snapshot::at(std::string_view id) const {
  const StoredOntology* stored = find(id);
  if (stored == nullptr) throw Error(ErrorCode::kNotFound, "unknown ontology: " + std::string(id));
  return *stored;
}

std::vector<std::string> Snapshot::resolve_ids(const std::vector<std::string>& requested) const {
  if (requested.empty()) return ids();
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen;
  for (const std::string& id : requested) {
    at(id);
    if (seen.insert(id).second) out.push_back(id);
  }
  return out;
}

// ---------------------------------------------------------------------------

Store::Store(const std::filesystem::path& dir) : dir_(dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec || !std::filesystem::is_directory(dir_)) {
    throw Error(ErrorCode::kIo, "cannot create store directory " + dir_.string());
  }
  const std::string file = database_path().string();
  if (sqlite3_open_v2(file.c_str(), &db_, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX,
                      nullptr) != SQLITE_OK) {
    std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    db_ = nullptr;
    throw Error(ErrorCode::kIo, "cannot open store " + file + ": " + msg);
  }
  sqlite3_busy_timeout(db_, 5000);
  try {
    {
      Statement check(db_, "PRAGMA integrity_check");
      std::string verdict;
      while (check.step()) {
        if (verdict.empty()) verdict = check.text(0);
      }
      if (verdict != "ok") throw Error(ErrorCode::kCorrupt, verdict);
    }
    exec("PRAGMA foreign_keys = ON");
    exec("BEGIN IMMEDIATE");
    try {
      exec(kSchema);
      Statement schema(db_, "INSERT OR IGNORE INTO meta(key, value) VALUES ('schema', ?1)");
      schema.bind(1, std::to_string(kSchemaVersion)).run();
      exec("INSERT OR IGNORE INTO meta(key, value) VALUES ('version', '0')");
      exec("COMMIT");
    } catch (...) {
      sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
      throw;
    }
    {
      Statement schema(db_, "SELECT value FROM meta WHERE key = 'schema'");
      if (!schema.step() || schema.text(0) != std::to_string(kSchemaVersion)) {
        throw Error(ErrorCode::kCorrupt, "unsupported store schema version");
      }
    }
    load();
  } catch (const Error& e) {
    sqlite3_close(db_);
    db_ = nullptr;
    if (e.code() == ErrorCode::kCorrupt || e.code() == ErrorCode::kInternal) {
      throw Error(ErrorCode::kCorrupt, "store " + file + " is corrupt: " + e.what());
    }
    throw;
  }
}

Store::~Store() {
  if (db_ != nullptr) sqlite3_close(db_);
}

void Store::exec(const char* sql) const {
  char* err = nullptr;
  const int rc = sqlite3_exec(db_, sql, nullptr, nullptr, &err);
  if (rc != SQLITE_OK) {
    std::string msg = err ? err : sqlite3_errstr(rc);
    sqlite3_free(err);
    throw Error(rc == SQLITE_CORRUPT || rc == SQLITE_NOTADB ? ErrorCode::kCorrupt : ErrorCode::kInternal,
                "sqlite: " + msg);
  }
}

void Store::load() {
  std::uint64_t version = 0;
  {
    Statement v(db_, "SELECT value FROM meta WHERE key = 'version'");
    if (!v.step()) throw Error(ErrorCode::kCorrupt, "missing version");
    version = std::stoull(v.text(0));
  }
  std::map<std::string, StoredOntology, std::less<>> ontologies;
  Statement onts(db_, "SELECT id, display_name, source_format, concept_count FROM ontologies ORDER BY id");
  Statement rows(db_,
                 "SELECT uri, pref_label, alt_labels, notes, broader, narrower, related "
                 "FROM concepts WHERE ontology_id = ?1 ORDER BY uri");
  while (onts.step()) {
    OntologyRecord record;
    record.id = onts.text(0);
    record.display_name = onts.text(1);
    try {
      record.source_format = parse_source_format(onts.text(2));
    } catch (const Error&) {
      throw Error(ErrorCode::kCorrupt, "bad source format for " + record.id);
    }
    record.concept_count = static_cast<std::size_t>(onts.integer(3));
    std::vector<Concept> concepts;
    rows.bind(1, record.id);
    while (rows.step()) {
      Concept c;
      c.uri = rows.text(0);
      c.pref_label = rows.text(1);
      c.alt_labels = from_json_array(rows.text(2));
      c.notes = from_json_array(rows.text(3));
      c.broader = from_json_array(rows.text(4));
      c.narrower = from_json_array(rows.text(5));
      c.related = from_json_array(rows.text(6));
      c.ontology_id = record.id;
      concepts.push_back(std::move(c));
    }
    rows.run();  // reset for the next ontology
    if (concepts.size() != record.concept_count) {
      throw Error(ErrorCode::kCorrupt, "concept count mismatch for " + record.id);
    }
    auto graph = std::make_shared<const ConceptGraph>(std::move(concepts));
    record.root_uris = graph->root_uris();
    std::string id = record.id;
    ontologies.emplace(std::move(id), StoredOntology{std::move(record), std::move(graph)});
  }
  std::lock_guard lock(snapshot_mutex_);
  current_ = std::make_shared<const Snapshot>(version, std::move(ontologies));
}

SnapshotPtr Store::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return current_;
}

void Store::set_kill_point(std::function<void(std::string_view)> hook) {
  std::lock_guard lock(db_mutex_);
  kill_hook_ = std::move(hook);
}

void Store::kill_point(std::string_view name) const {
  if (kill_hook_) kill_hook_(name);
}

std::uint64_t Store::bump_version() {
  const std::uint64_t next = snapshot()->version() + 1;
  Statement v(db_, "UPDATE meta SET value = ?1 WHERE key = 'version'");
  v.bind(1, std::to_string(next)).run();
  return next;
}

std::uint64_t Store::commit_ontology(OntologyRecord record, std::vector<Concept> concepts) {
  if (record.id.empty()) throw Error(ErrorCode::kInvalidArgument, "ontology id must not be empty");
  if (concepts.empty()) throw Error(ErrorCode::kEmptyOntology, "ontology " + record.id + " has no concepts");
  for (Concept& c : concepts) c.ontology_id = record.id;
  if (auto problems = check_invariants(concepts); !problems.empty()) {
    std::string msg = "ontology " + record.id + " violates model invariants: " + problems.front();
    if (problems.size() > 1) msg += " (+" + std::to_string(problems.size() - 1) + " more)";
    throw Error(ErrorCode::kInvariant, msg);
  }
  auto graph = std::make_shared<const ConceptGraph>(std::move(concepts));
  record.concept_count = graph->size();
  record.root_uris = graph->root_uris();
  if (record.display_name.empty()) record.display_name = record.id;

  std::lock_guard lock(db_mutex_);
  std::uint64_t version = 0;
  exec("BEGIN IMMEDIATE");
  try {
    kill_point("begin");
    Statement del_c(db_, "DELETE FROM concepts WHERE ontology_id = ?1");
    del_c.bind(1, record.id).run();
    Statement del_i(db_, "DELETE FROM pref_index WHERE ontology_id = ?1");
    del_i.bind(1, record.id).run();
    Statement ont(db_,
                  "INSERT OR REPLACE INTO ontologies(id, display_name, source_format, concept_count) "
                  "VALUES (?1, ?2, ?3, ?4)");
    ont.bind(1, record.id)
        .bind(2, record.display_name)
        .bind(3, to_string(record.source_format))
        .bind(4, static_cast<std::int64_t>(record.concept_count))
        .run();
    kill_point("ontology-written");
    Statement ins(db_,
                  "INSERT INTO concepts(ontology_id, uri, pref_label, alt_labels, notes, broader, narrower, related) "
                  "VALUES (?1, ?2, ?3, ?4, ?5, ?6, ?7, ?8)");
    for (const Concept& c : graph->concepts()) {
      ins.bind(1, record.id)
          .bind(2, c.uri)
          .bind(3, c.pref_label)
          .bind(4, to_json_array(c.alt_labels))
          .bind(5, to_json_array(c.notes))
          .bind(6, to_json_array(c.broader))
          .bind(7, to_json_array(c.narrower))
          .bind(8, to_json_array(c.related))
          .run();
    }
    kill_point("concepts-written");
    Statement idx(db_, "INSERT OR IGNORE INTO pref_index(ontology_id, normalized, uri) VALUES (?1, ?2, ?3)");
    for (const Concept& c : graph->concepts()) {
      idx.bind(1, record.id).bind(2, normalize(c.pref_label)).bind(3, c.uri).run();
    }
    kill_point("index-written");
    version = bump_version();
    kill_point("before-commit");
    exec("COMMIT");
  } catch (...) {
    sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
    throw;
  }
  kill_point("after-commit");

  std::lock_guard snap_lock(snapshot_mutex_);
  auto ontologies = current_->ontologies();
  std::string id = record.id;
  ontologies.insert_or_assign(std::move(id), StoredOntology{std::move(record), std::move(graph)});
  current_ = std::make_shared<const Snapshot>(version, std::move(ontologies));
  return version;
}

std::uint64_t Store::delete_ontology(std::string_view id) {
  std::lock_guard lock(db_mutex_);
  snapshot()->at(id);
  std::uint64_t version = 0;
  exec("BEGIN IMMEDIATE");
  try {
    kill_point("begin");
    for (const char* sql : {"DELETE FROM pref_index WHERE ontology_id = ?1",
                            "DELETE FROM concepts WHERE ontology_id = ?1",
                            "DELETE FROM ontologies WHERE id = ?1"}) {
      Statement s(db_, sql);
      s.bind(1, id).run();
    }
    version = bump_version();
    kill_point("before-commit");
    exec("COMMIT");
  } catch (...) {
    sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
    throw;
  }
  kill_point("after-commit");

  std::lock_guard snap_lock(snapshot_mutex_);
  auto ontologies = current_->ontologies();
  ontologies.erase(ontologies.find(id));
  current_ = std::make_shared<const Snapshot>(version, std::move(ontologies));
  return version;
}

std::vector<std::string> Store::query_pref_index(std::string_view ontology_id, std::string_view normalized) const {
  std::lock_guard lock(db_mutex_);
  Statement q(db_, "SELECT uri FROM pref_index WHERE ontology_id = ?1 AND normalized = ?2 ORDER BY uri");
  q.bind(1, ontology_id).bind(2, normalized);
  std::vector<std::string> out;
  while (q.step()) out.push_back(q.text(0));
  return out;
}

std::filesystem::path default_store_path(std::string_view flag_value) {
  if (!flag_value.empty()) return std::filesystem::path(std::string(flag_value));
  if (const char* env = std::getenv("HIVE_STORE"); env != nullptr && *env != '\0') return env;
  return "hive-store";
}

}  // namespace hive
