#pragma once

#include <string>
#include <vector>

#include "ontokms/rdf/triple_store.hpp"
#include "ontokms/sparql/query.hpp"

namespace ontokms::sparql {

/// Evaluates `query` read-only against `store`.
///
/// Patterns are joined with an index-backed nested loop, most-bound pattern
/// first (ties keep textual order); each pattern is resolved through
/// TripleStore::match with the variables bound so far substituted. Then, in
/// order: filters, DISTINCT over the projected variables, a stable sort by the
/// canonical encoding of the projected terms in select order, OFFSET/LIMIT,
/// and finally projection.
std::vector<Binding> evaluate(const rdf::TripleStore& store, const Query& query);

/// True when the filtered variable is bound in `binding` and its term passes.
bool passes(const FilterExpr& filter, const Binding& binding);

struct ResultTable {
  std::vector<std::string> variables;
  /// Canonical encodings, one row per solution, columns as `variables`.
  std::vector<std::vector<std::string>> rows;
};

ResultTable to_table(const Query& query, const std::vector<Binding>& solutions);

}  // namespace ontokms::sparql
