#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "hive/skos.h"

struct sqlite3;

namespace hive {

struct StoredOntology {
  OntologyRecord record;
  std::shared_ptr<const ConceptGraph> graph;
};

// Immutable view of the store at one version. Holding the shared_ptr keeps
// every graph alive regardless of later commits.
class Snapshot {
 public:
  Snapshot() = default;
  Snapshot(std::uint64_t version, std::map<std::string, StoredOntology, std::less<>> ontologies)
      : version_(version), ontologies_(std::move(ontologies)) {}

  std::uint64_t version() const { return version_; }
  bool empty() const { return ontologies_.empty(); }

  /// Records sorted by id.
  std::vector<OntologyRecord> list_ontologies() const;
  std::vector<std::string> ids() const;

  const StoredOntology* find(std::string_view id) const;
  /// Throws kNotFound naming the id.
  const StoredOntology& at(std::string_view id) const;
  const ConceptGraph& graph(std::string_view id) const { return *at(id).graph; }

  /// Resolves a requested id list; empty means every ontology. Unknown ids
  /// throw kNotFound, duplicates are dropped keeping the first.
  std::vector<std::string> resolve_ids(const std::vector<std::string>& requested) const;

  const std::map<std::string, StoredOntology, std::less<>>& ontologies() const { return ontologies_; }

 private:
  std::uint64_t version_ = 0;
  std::map<std::string, StoredOntology, std::less<>> ontologies_;
};

using SnapshotPtr = std::shared_ptr<const Snapshot>;

// Single-file SQLite store under a directory. Readers take snapshots, one
// writer commits at a time; a commit publishes a new snapshot only after the
// transaction is durable.
class Store {
 public:
  static constexpr std::string_view kFileName = "hive.db";

  /// Creates the directory and schema on first open. A damaged database
  /// file throws kCorrupt.
  explicit Store(const std::filesystem::path& dir);
  ~Store();
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  const std::filesystem::path& directory() const { return dir_; }
  std::filesystem::path database_path() const { return dir_ / kFileName; }

  SnapshotPtr snapshot() const;
  std::uint64_t version() const { return snapshot()->version(); }

  /// Atomically replaces the ontology record.id with the given concepts.
  /// concept_count and root_uris are recomputed; ontology_id on every
  /// concept is overwritten. Invariant violations throw kInvariant.
  std::uint64_t commit_ontology(OntologyRecord record, std::vector<Concept> concepts);

  /// Throws kNotFound for an unknown id.
  std::uint64_t delete_ontology(std::string_view id);

  /// Reads the persisted prefLabel index table directly.
  std::vector<std::string> query_pref_index(std::string_view ontology_id, std::string_view normalized) const;

  /// Test hook called at named points inside a write transaction
  /// ("begin", "ontology-written", "concepts-written", "index-written",
  /// "before-commit", "after-commit").
  void set_kill_point(std::function<void(std::string_view)> hook);

 private:
  void exec(const char* sql) const;
  void load();
  void kill_point(std::string_view name) const;
  std::uint64_t bump_version();

  std::filesystem::path dir_;
  sqlite3* db_ = nullptr;
  mutable std::mutex db_mutex_;        // serializes writers and direct queries
  mutable std::mutex snapshot_mutex_;  // guards current_
  SnapshotPtr current_;
  std::function<void(std::string_view)> kill_hook_;
};

/// Store directory from an explicit flag, else $HIVE_STORE, else "hive-store".
std::filesystem::path default_store_path(std::string_view flag_value = {});

}  // namespace hive
