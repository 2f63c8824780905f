#include "ontokms/sparql/evaluator.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace ontokms::sparql {

namespace {

std::optional<rdf::Term> substitute(const PatternSlot& slot, const Binding& binding) {
  if (const auto* term = std::get_if<rdf::Term>(&slot)) return *term;
  const auto& name = std::get<Variable>(slot).name;
  auto it = binding.find(name);
  if (it == binding.end()) return std::nullopt;
  return it->second;
}

// Binds `slot` to `value`; false when the slot is a variable already bound to a
// different term (repeated variable inside one pattern).
bool bind(const PatternSlot& slot, const rdf::Term& value, Binding& binding) {
  const auto* var = std::get_if<Variable>(&slot);
  if (var == nullptr) return true;
  auto [it, inserted] = binding.try_emplace(var->name, value);
  return inserted || it->second == value;
}

std::vector<std::size_t> join_order(const std::vector<TriplePattern>& patterns) {
  std::vector<std::size_t> order(patterns.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return patterns[a].bound_count() > patterns[b].bound_count();
  });
  return order;
}

using SortKey = std::vector<const std::string*>;

SortKey sort_key(const Binding& binding, const std::vector<std::string>& vars) {
  SortKey key;
  key.reserve(vars.size());
  for (const auto& v : vars) key.push_back(&binding.at(v).canonical());
  return key;
}

bool key_less(const SortKey& a, const SortKey& b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [](const std::string* x, const std::string* y) { return *x < *y; });
}

}  // namespace

bool passes(const FilterExpr& filter, const Binding& binding) {
  return std::visit(
      [&](const auto& f) -> bool {
        auto it = binding.find(f.variable);
        if (it == binding.end()) return false;
        const rdf::Term& term = it->second;
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, RegexFilter>) {
          return std::regex_search(term.value(), *f.compiled);
        } else {
          return term.is_literal() && term.lang() == f.tag;
        }
      },
      filter);
}

std::vector<Binding> evaluate(const rdf::TripleStore& store, const Query& query) {
  std::vector<Binding> solutions(1);
  for (std::size_t index : join_order(query.patterns)) {
    const TriplePattern& pattern = query.patterns[index];
    std::vector<Binding> next;
    for (const Binding& binding : solutions) {
      const auto s = substitute(pattern.subject, binding);
      const auto p = substitute(pattern.predicate, binding);
      const auto o = substitute(pattern.object, binding);
      // Literals never occur in subject/predicate position of a stored triple.
      if ((s && !s->is_iri()) || (p && !p->is_iri())) continue;
      for (const rdf::Triple& t : store.match(s, p, o)) {
        Binding extended = binding;
        if (bind(pattern.subject, t.subject, extended) &&
            bind(pattern.predicate, t.predicate, extended) &&
            bind(pattern.object, t.object, extended)) {
          next.push_back(std::move(extended));
        }
      }
    }
    solutions = std::move(next);
    if (solutions.empty()) break;
  }

  if (!query.filters.empty()) {
    std::erase_if(solutions, [&](const Binding& b) {
      return !std::all_of(query.filters.begin(), query.filters.end(),
                          [&](const FilterExpr& f) { return passes(f, b); });
    });
  }

  const std::vector<std::string> projection = query.projection();
  std::vector<SortKey> keys;
  keys.reserve(solutions.size());
  for (const auto& b : solutions) keys.push_back(sort_key(b, projection));

  std::vector<std::size_t> order(solutions.size());
  std::iota(order.begin(), order.end(), 0);
  if (query.distinct) {
    std::set<std::size_t, std::function<bool(std::size_t, std::size_t)>> seen(
        [&](std::size_t a, std::size_t b) { return key_less(keys[a], keys[b]); });
    std::erase_if(order, [&](std::size_t i) { return !seen.insert(i).second; });
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key_less(keys[a], keys[b]); });

  const std::size_t begin = std::min(query.offset, order.size());
  const std::size_t end =
      query.limit ? begin + std::min(order.size() - begin, *query.limit) : order.size();

  std::vector<Binding> out;
  out.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    const Binding& full = solutions[order[i]];
    Binding projected;
    for (const auto& v : projection) projected.emplace(v, full.at(v));
    out.push_back(std::move(projected));
  }
  return out;
}

ResultTable to_table(const Query& query, const std::vector<Binding>& solutions) {
  ResultTable table;
  table.variables = query.projection();
  table.rows.reserve(solutions.size());
  for (const auto& b : solutions) {
    std::vector<std::string> row;
    row.reserve(table.variables.size());
    for (const auto& v : table.variables) row.push_back(b.at(v).canonical());
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace ontokms::sparql
