#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ontokms/onto/concept.hpp"
#include "ontokms/rdf/triple_store.hpp"

namespace ontokms::onto {

/// Consistency checks, lettered as reported:
///   (a) subClassOf hierarchy is acyclic
///   (b) exactly the four branch roots exist, as parentless classes
///   (c) every non-root concept reaches a root
///   (d) one en and one pt label and comment per concept, nothing else
///   (e) no subClassOf edge of a concept points at a non-concept
enum class ViolationKind { Cycle, Roots, Unrooted, Annotation, Dangling };

char kind_letter(ViolationKind kind);
std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string subject;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::size_t concepts = 0;
  std::size_t labels = 0;
  std::size_t comments = 0;
  std::vector<Violation> violations;  // sorted by (kind, subject, message)

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
};

ValidationReport validate(const rdf::TripleStore& store,
                          std::string_view base_iri = kDefaultBaseIri);

nlohmann::json to_json(const ValidationReport& report);
/// Plain-text rendering used by the CLI; ends with "<n> violations".
std::string to_text(const ValidationReport& report);

/// Depth-first acyclicity check over every IRI-valued subClassOf edge.
bool is_acyclic(const rdf::TripleStore& store);

}  // namespace ontokms::onto
