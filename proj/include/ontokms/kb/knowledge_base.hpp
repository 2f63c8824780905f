#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontokms/ingest/record_catalog.hpp"
#include "ontokms/nav/navigation.hpp"
#include "ontokms/onto/change_log.hpp"
#include "ontokms/onto/ontology.hpp"
#include "ontokms/onto/validator.hpp"
#include "ontokms/rdf/triple_store.hpp"
#include "ontokms/rdf/turtle.hpp"
#include "ontokms/search/inverted_index.hpp"
#include "ontokms/sparql/evaluator.hpp"

namespace ontokms::kb {

/// Subject of the change records written for record ingestion.
inline constexpr std::string_view kIngestSubject = "urn:ontokms:ingest";

/// Files kept in a data directory.
inline constexpr std::string_view kSnapshotFile = "store.nt";
inline constexpr std::string_view kChangeLogFile = "changes.jsonl";
inline constexpr std::string_view kRecordsFile = "records.jsonl";
inline constexpr std::string_view kSeedFile = "seed.nt";

/// The store, change log, text index and record catalog behind one facade.
///
/// With a data directory, the snapshot and record catalog are rewritten after
/// every mutation and the change log is appended as it grows. Not
/// synchronized: callers serialize writers against readers.
class KnowledgeBase {
 public:
  /// In-memory instance.
  explicit KnowledgeBase(std::string base_iri = std::string(onto::kDefaultBaseIri));
  /// Opens (creating if needed) a data directory and loads whatever state it
  /// holds. Throws Error(Io) when the directory is not writable, and
  /// Error(Parse/Validation) for corrupt files.
  KnowledgeBase(const std::filesystem::path& data_dir,
                std::string base_iri = std::string(onto::kDefaultBaseIri));

  KnowledgeBase(const KnowledgeBase&) = delete;
  KnowledgeBase& operator=(const KnowledgeBase&) = delete;

  const std::string& base_iri() const noexcept { return ontology_.base_iri(); }
  const std::optional<std::filesystem::path>& data_dir() const noexcept { return data_dir_; }
  const rdf::TripleStore& store() const noexcept { return store_; }
  const onto::ChangeLog& log() const noexcept { return log_; }
  const search::InvertedIndex& index() const noexcept { return index_; }
  const ingest::RecordCatalog& catalog() const noexcept { return catalog_; }
  const onto::Ontology& ontology() const noexcept { return ontology_; }
  std::string resolve_id(std::string_view id) const { return ontology_.resolve_id(id); }

  /// Installs the bundled seed and writes `seed.nt`. Throws Error(Conflict)
  /// when the store is not empty. Not recorded in the change log: replay
  /// starts from the seed.
  std::size_t seed();

  onto::Concept create_concept(const onto::Concept& request);
  onto::Concept move_concept(std::string_view id, const std::set<std::string>& parents);
  std::size_t delete_concept(std::string_view id, onto::DeleteMode mode);
  onto::Concept rename_concept(std::string_view id, std::string_view new_id);
  onto::Concept annotate_concept(std::string_view id, const onto::LangMap& labels,
                                 const onto::LangMap& comments);
  /// Parses the whole document before touching the store.
  std::size_t import_rdf(std::string_view text, rdf::Syntax syntax, std::string_view source);
  std::string export_rdf(rdf::Syntax syntax) const;
  /// Appends one Import record (subject kIngestSubject) holding the accepted
  /// records, even when none were accepted.
  ingest::IngestReport ingest(std::string_view content, ingest::RecordFormat format,
                              std::string_view source);

  std::vector<search::SearchHit> search(std::string_view q, const search::SearchOptions& options) const;
  search::SuggestionList suggest(std::string_view q) const;
  std::vector<ingest::ConceptSuggestion> suggest_concepts(std::string_view text,
                                                          std::size_t k) const;
  sparql::ResultTable query(std::string_view text) const;
  onto::ValidationReport validate() const;
  nav::GraphView neighborhood(std::string_view id, std::size_t depth, std::string_view lang) const;
  std::vector<std::vector<std::string>> paths_to_root(std::string_view id) const;
  std::vector<onto::ChangeRecord> changes(std::uint64_t since) const { return log_.since(since); }

  /// Recomputes the index from the store and catalog alone.
  search::InvertedIndex build_index() const;
  void rebuild_index() { index_ = build_index(); }

  /// Re-applies one record: ingestion records restore the catalog, the rest
  /// go through Ontology::replay.
  void replay(const onto::ChangeRecord& record);

  /// Fresh in-memory instance holding `baseline` with `records` replayed.
  static std::unique_ptr<KnowledgeBase> from_log(const rdf::TripleStore& baseline,
                                                 const std::vector<onto::ChangeRecord>& records,
                                                 std::string base_iri = std::string(onto::kDefaultBaseIri));

 private:
  void reindex_concept(const std::string& iri);
  void persist(bool records_changed);
  std::filesystem::path file(std::string_view name) const { return *data_dir_ / name; }

  std::optional<std::filesystem::path> data_dir_;
  rdf::TripleStore store_;
  onto::ChangeLog log_;
  search::InvertedIndex index_;
  ingest::RecordCatalog catalog_;
  onto::Ontology ontology_;
};

/// Index documents for one concept: its labels and comments grouped by
/// language, several values for one language joined by a space in canonical
/// order. Empty when `iri` is not a concept.
std::vector<std::pair<search::DocRef, std::string>> concept_documents(
    const rdf::TripleStore& store, const std::string& iri);

}  // namespace ontokms::kb
