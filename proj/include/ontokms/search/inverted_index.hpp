#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace ontokms::search {

enum class DocKind { ConceptLabel, ConceptComment, Record };

std::string_view to_string(DocKind kind);

/// One indexed text field: a concept's label or comment in one language, or
/// an ingested record's text. Ordered by (kind, owner, lang).
struct DocRef {
  DocKind kind = DocKind::ConceptLabel;
  std::string owner;  // concept IRI or record id
  std::string lang;   // empty when untagged

  std::string canonical() const;

  friend bool operator==(const DocRef&, const DocRef&) = default;
  friend auto operator<=>(const DocRef&, const DocRef&) = default;
};

struct SearchHit {
  DocRef doc;
  double score = 0.0;
  std::string snippet;
};

struct SearchOptions {
  std::optional<std::string> lang;   // keep only DocRefs with this tag
  std::optional<std::set<DocKind>> kinds;
  std::size_t k = 10;
};

struct Suggestion {
  std::string token;
  std::size_t distance = 0;

  friend bool operator==(const Suggestion&, const Suggestion&) = default;
};

/// Near matches for one query token that has no postings.
struct TokenSuggestions {
  std::string query_token;
  std::vector<Suggestion> candidates;  // sorted by (distance, token)
};

using SuggestionList = std::vector<TokenSuggestions>;

class InvertedIndex {
 public:
  /// Re-indexing an existing DocRef replaces its previous content. Empty
  /// documents still count towards doc_count.
  void index_doc(const DocRef& doc, std::string_view text);
  void remove_doc(const DocRef& doc);
  /// Removes every DocRef of `kind` owned by `owner`, whatever its language.
  void remove_owner(DocKind kind, std::string_view owner);
  void clear();

  bool contains(const DocRef& doc) const { return docs_.count(doc) != 0; }
  std::size_t doc_count() const noexcept { return docs_.size(); }
  std::size_t df(const std::string& token) const;
  std::uint32_t tf(const std::string& token, const DocRef& doc) const;
  /// Token count of `doc` (0 when absent).
  std::size_t doc_length(const DocRef& doc) const;
  const std::string* text(const DocRef& doc) const;
  std::vector<DocRef> docs() const;
  std::vector<std::string> vocabulary() const;

  /// score(d) = sum over query tokens t (with repetition) of
  /// tf(t, d) * ln(doc_count / df(t)), over documents holding at least one
  /// query token. Returns the top `k` by (score desc, DocRef asc).
  std::vector<SearchHit> search(std::string_view query, const SearchOptions& options) const;

  /// For each distinct query token without postings, up to `k` vocabulary
  /// tokens within `max_distance` edits, ordered by (distance, token).
  SuggestionList suggest(std::string_view query, std::size_t max_distance = 2,
                         std::size_t k = 5) const;

  /// Canonical serialized state; two indexes holding the same documents
  /// serialize identically.
  nlohmann::json to_json() const;

 private:
  struct DocEntry {
    std::string text;
    std::map<std::string, std::uint32_t> terms;
    std::size_t length = 0;
  };

  std::map<std::string, std::map<DocRef, std::uint32_t>> postings_;
  std::map<DocRef, DocEntry> docs_;
};

nlohmann::json to_json(const SearchHit& hit);
nlohmann::json to_json(const SuggestionList& suggestions);

}  // namespace ontokms::search
