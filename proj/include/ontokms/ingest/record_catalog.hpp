#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ontokms/search/inverted_index.hpp"

namespace ontokms::ingest {

/// A free-text field extracted from a clinical record. `patient_ref` is
/// opaque and never interpreted.
struct AnnotationRecord {
  std::string record_id;
  std::string table;
  std::string field;
  std::string text;
  std::optional<std::string> patient_ref;

  friend bool operator==(const AnnotationRecord&, const AnnotationRecord&) = default;
};

nlohmann::json to_json(const AnnotationRecord& record);

enum class RecordFormat { Jsonl, Csv };

std::optional<RecordFormat> record_format_from_name(std::string_view name);
std::optional<RecordFormat> record_format_from_path(const std::filesystem::path& path);

/// Result of reading one row: either a record or the reason it was rejected.
/// `row` is the 1-based line number for JSONL and the 1-based data-record
/// number (header excluded) for CSV.
struct ParsedRow {
  std::size_t row = 0;
  std::optional<AnnotationRecord> record;
  std::string error;
};

/// JSONL: one object per line with record_id, table, field, text and optional
/// patient_ref. CSV: UTF-8, comma-separated, double-quote escaping, header
/// naming those five columns (any order). Blank lines are skipped.
///
/// Row-level problems (malformed JSON, wrong column count, missing or
/// mistyped fields, empty text) become rejected rows; a missing or incomplete
/// CSV header throws Error(Validation).
std::vector<ParsedRow> parse_records(std::string_view content, RecordFormat format);

struct Rejection {
  std::size_t row = 0;
  std::string reason;
};

struct IngestReport {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::vector<Rejection> reasons;
  std::vector<AnnotationRecord> records;  // the accepted ones, in file order
};

nlohmann::json to_json(const IngestReport& report);

/// Records by id, mirrored into a text index as Record DocRefs.
class RecordCatalog {
 public:
  bool contains(std::string_view record_id) const;
  const AnnotationRecord* find(std::string_view record_id) const;
  const std::map<std::string, AnnotationRecord, std::less<>>& records() const noexcept {
    return records_;
  }
  std::size_t size() const noexcept { return records_.size(); }

  /// Accepts the parsed rows that are valid and not duplicates (of the
  /// catalog or of an earlier row), adds them to the catalog and indexes
  /// their text.
  IngestReport ingest(const std::vector<ParsedRow>& rows, search::InvertedIndex& index);
  bool remove(std::string_view record_id, search::InvertedIndex& index);
  void clear(search::InvertedIndex& index);

  /// One JSON object per line, ordered by record id.
  std::string to_jsonl() const;
  /// Loads a catalog written by to_jsonl (no indexing). Throws Error(Validation)
  /// on malformed lines.
  static RecordCatalog from_jsonl(std::string_view content);

 private:
  std::map<std::string, AnnotationRecord, std::less<>> records_;
};

struct ConceptSuggestion {
  std::string concept_iri;
  double score = 0.0;
};

/// Ranks concepts whose labels share tokens with `text`: runs the TF-IDF
/// search over ConceptLabel documents only, sums scores per concept and
/// returns the top `k` by (score desc, IRI asc).
std::vector<ConceptSuggestion> suggest_concepts(const search::InvertedIndex& index,
                                                std::string_view text, std::size_t k);

}  // namespace ontokms::ingest
