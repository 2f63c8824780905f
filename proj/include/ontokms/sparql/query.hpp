#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ontokms/rdf/term.hpp"

namespace ontokms::sparql {

struct Variable {
  std::string name;
  friend bool operator==(const Variable&, const Variable&) = default;
};

using PatternSlot = std::variant<rdf::Term, Variable>;

struct TriplePattern {
  PatternSlot subject;
  PatternSlot predicate;
  PatternSlot object;

  /// Number of constant (non-variable) positions.
  int bound_count() const;
};

/// `regex(?v, "pattern", "flags")`, ECMAScript dialect; the only accepted
/// flag is `i`. Matches against the term's value (IRI text or literal lexical
/// form).
struct RegexFilter {
  std::string variable;
  std::string pattern;
  std::string flags;
  std::shared_ptr<const std::regex> compiled;
};

/// `lang(?v) = "tag"`; an empty tag selects literals without a language.
struct LangFilter {
  std::string variable;
  std::string tag;
};

using FilterExpr = std::variant<RegexFilter, LangFilter>;

struct Query {
  std::map<std::string, std::string> prefixes;
  bool select_all = false;
  std::vector<std::string> select_vars;
  bool distinct = false;
  std::vector<TriplePattern> patterns;
  std::vector<FilterExpr> filters;
  std::optional<std::size_t> limit;
  std::size_t offset = 0;

  /// Distinct variables of `patterns` in order of first appearance.
  std::vector<std::string> pattern_variables() const;
  /// `select_vars`, or the pattern variables for `SELECT *`.
  std::vector<std::string> projection() const;
};

/// One solution: variable name -> bound term.
using Binding = std::map<std::string, rdf::Term>;

/// Grammar: `PREFIX`* `SELECT` `DISTINCT`? (`*` | var+) `WHERE`? `{` triple
/// patterns (with `;`/`,` abbreviations) and `FILTER(...)` clauses `}` then
/// `LIMIT n` / `OFFSET n` in either order. Keywords are case-insensitive.
///
/// Throws ParseError (with line/column) on syntax errors, unknown prefixes,
/// filters or selected variables that occur in no pattern, invalid regexes and
/// unsupported regex flags.
Query parse_query(std::string_view text);

}  // namespace ontokms::sparql
