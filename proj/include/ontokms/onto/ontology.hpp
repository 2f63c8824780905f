#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ontokms/onto/change_log.hpp"
#include "ontokms/onto/concept.hpp"
#include "ontokms/rdf/triple_store.hpp"

namespace ontokms::onto {

enum class DeleteMode { RefuseIfChildren, ReparentChildren };

std::optional<DeleteMode> delete_mode_from_string(std::string_view name);
std::string_view to_string(DeleteMode mode);

/// Subject used in change records for bulk imports.
inline constexpr std::string_view kImportSubject = "urn:ontokms:import";

/// Concept-level management over a triple store.
///
/// A concept is any IRI typed `owl:Class`. Every successful mutation appends
/// exactly one record to the change log and reports each concept whose
/// annotations may have changed to the listener; failed mutations leave the
/// store and log untouched.
class Ontology {
 public:
  using Listener = std::function<void(const std::string& concept_iri)>;

  Ontology(rdf::TripleStore& store, ChangeLog& log,
           std::string base_iri = std::string(kDefaultBaseIri));

  void set_listener(Listener listener) { listener_ = std::move(listener); }

  const std::string& base_iri() const noexcept { return base_iri_; }
  /// Absolute IRIs (anything containing ':') pass through; other strings are
  /// local names under the base IRI.
  std::string resolve_id(std::string_view id_or_local) const;
  std::vector<std::string> root_ids() const;
  bool is_root(std::string_view iri) const;

  bool is_concept(std::string_view iri) const;
  std::optional<Concept> find(std::string_view iri) const;
  /// Throws Error(NotFound).
  Concept get(std::string_view iri) const;
  std::vector<std::string> concept_ids() const;
  std::vector<std::string> parents(std::string_view iri) const;
  std::vector<std::string> children(std::string_view iri) const;
  /// True when `ancestor` is reachable from `iri` by following subClassOf
  /// edges (any subjects, not only concepts); a node is its own ancestor.
  bool has_ancestor(std::string_view iri, std::string_view ancestor) const;

  /// Errors: Conflict (id already a concept), Validation (bad id, unknown
  /// parent, missing parents for a non-root, parents for a root, annotations
  /// not exactly {en, pt}), Cycle (self-parent or existing path back to id).
  Concept create_concept(const Concept& request);
  /// Errors: NotFound, Validation (unknown parent, empty parents, root),
  /// Cycle (a new parent is id or one of its descendants).
  Concept move_concept(std::string_view id, const std::set<std::string>& new_parents);
  /// Removes every triple with id as subject or object and returns how many
  /// were removed. Errors: NotFound, Conflict (root, or children present in
  /// RefuseIfChildren mode).
  std::size_t delete_concept(std::string_view id, DeleteMode mode);
  /// Rewrites every triple mentioning id. Errors: NotFound, Conflict (root or
  /// new id already used), Validation (invalid new id).
  Concept rename_concept(std::string_view id, std::string_view new_id);
  /// Replaces the given languages of labels and/or comments. Errors: NotFound,
  /// Validation (language outside {en, pt} or empty text).
  Concept annotate_concept(std::string_view id, const LangMap& labels,
                           const LangMap& comments);
  /// Inserts triples verbatim (no consistency checks; validate reports
  /// problems). Returns the number newly added. One Import record is appended
  /// even when nothing was new.
  std::size_t import_triples(const std::vector<rdf::Triple>& triples,
                             std::string_view source);

  /// Re-applies a recorded mutation (appending a fresh record to this
  /// ontology's log). Import records without triples are ignored.
  void replay(const ChangeRecord& record);

  const rdf::TripleStore& store() const noexcept { return store_; }

 private:
  void notify(const std::string& iri) const;
  void check_annotations(const LangMap& labels, const LangMap& comments,
                         bool require_all) const;
  void set_annotations(const std::string& iri, std::string_view predicate,
                       const LangMap& values);

  rdf::TripleStore& store_;
  ChangeLog& log_;
  std::string base_iri_;
  Listener listener_;
};

}  // namespace ontokms::onto
