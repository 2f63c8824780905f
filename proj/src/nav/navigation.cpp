#include "ontokms/nav/navigation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "ontokms/error.hpp"
#include "ontokms/rdf/vocabulary.hpp"

namespace ontokms::nav {

namespace {

using rdf::Term;

const Term& sub_class_of() {
  static const Term term = Term::iri(std::string(rdf::vocab::kRdfsSubClassOf));
  return term;
}

bool is_concept(const rdf::TripleStore& store, const Term& iri) {
  static const Term type = Term::iri(std::string(rdf::vocab::kRdfType));
  static const Term owl_class = Term::iri(std::string(rdf::vocab::kOwlClass));
  return store.contains({iri, type, owl_class});
}

Term require_concept(const rdf::TripleStore& store, std::string_view id) {
  if (!rdf::is_valid_iri(id)) {
    throw Error(ErrorCode::NotFound, "unknown concept " + std::string(id), {{"id", id}});
  }
  Term term = Term::iri(std::string(id));
  if (!is_concept(store, term)) {
    throw Error(ErrorCode::NotFound, "unknown concept " + std::string(id), {{"id", id}});
  }
  return term;
}

std::vector<std::string> parents_of(const rdf::TripleStore& store, const Term& iri) {
  std::vector<std::string> out;
  for (const auto& t : store.match(iri, sub_class_of(), std::nullopt)) {
    if (t.object.is_iri() && is_concept(store, t.object)) out.push_back(t.object.value());
  }
  return out;
}

std::vector<std::string> children_of(const rdf::TripleStore& store, const Term& iri) {
  std::vector<std::string> out;
  for (const auto& t : store.match(std::nullopt, sub_class_of(), iri)) {
    if (is_concept(store, t.subject)) out.push_back(t.subject.value());
  }
  return out;
}

std::string local_name(const std::string& iri) {
  const auto cut = iri.find_last_of("#/:");
  return cut == std::string::npos ? iri : iri.substr(cut + 1);
}

std::string preferred_label(const rdf::TripleStore& store, const Term& iri, std::string_view lang) {
  static const Term label = Term::iri(std::string(rdf::vocab::kRdfsLabel));
  std::map<std::string, std::string> by_lang;
  for (const auto& t : store.match(iri, label, std::nullopt)) {
    if (t.object.is_literal()) by_lang.try_emplace(t.object.lang(), t.object.value());
  }
  for (std::string_view want : {lang, std::string_view("en")}) {
    if (auto it = by_lang.find(std::string(want)); it != by_lang.end()) return it->second;
  }
  return by_lang.empty() ? local_name(iri.value()) : by_lang.begin()->second;
}

}  // namespace

GraphView neighborhood(const rdf::TripleStore& store, std::string_view center,
                       std::size_t depth, std::string_view lang) {
  const Term start = require_concept(store, center);
  std::map<std::string, std::size_t> reached{{start.value(), 0}};
  std::deque<std::string> queue{start.value()};
  while (!queue.empty()) {
    const std::string current = std::move(queue.front());
    queue.pop_front();
    const std::size_t d = reached.at(current);
    if (d == depth) continue;
    const Term term = Term::iri(current);
    for (const auto& list : {parents_of(store, term), children_of(store, term)}) {
      for (const auto& next : list) {
        if (reached.try_emplace(next, d + 1).second) queue.push_back(next);
      }
    }
  }

  GraphView view;
  std::set<GraphEdge> edges;
  for (const auto& [id, d] : reached) {
    const Term term = Term::iri(id);
    const auto parents = parents_of(store, term);
    view.nodes.push_back({id, preferred_label(store, term, lang), parents.empty(), d});
    for (const auto& p : parents) {
      if (reached.count(p)) edges.insert({id, p});
    }
  }
  std::stable_sort(view.nodes.begin(), view.nodes.end(),
                   [](const GraphNode& a, const GraphNode& b) { return a.depth < b.depth; });
  view.edges.assign(edges.begin(), edges.end());
  return view;
}

std::vector<std::vector<std::string>> path_to_root(const rdf::TripleStore& store,
                                                   std::string_view id) {
  const Term start = require_concept(store, id);
  std::vector<std::vector<std::string>> paths;
  std::vector<std::string> path{start.value()};
  // Depth-first enumeration with an explicit stack of pending parent lists.
  std::vector<std::pair<std::vector<std::string>, std::size_t>> stack;
  stack.emplace_back(parents_of(store, start), 0);
  if (stack.back().first.empty()) paths.push_back(path);
  while (!stack.empty()) {
    auto& [parents, next] = stack.back();
    if (next == parents.size()) {
      stack.pop_back();
      path.pop_back();
      continue;
    }
    const std::string parent = parents[next++];
    if (std::find(path.begin(), path.end(), parent) != path.end()) continue;
    path.push_back(parent);
    auto grand = parents_of(store, Term::iri(parent));
    if (grand.empty()) paths.push_back(path);
    stack.emplace_back(std::move(grand), 0);
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

nlohmann::json to_json(const GraphView& view) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : view.nodes) {
    nodes.push_back({{"id", n.id}, {"label", n.label}, {"is_root", n.is_root}, {"depth", n.depth}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : view.edges) edges.push_back({{"child", e.child}, {"parent", e.parent}});
  return {{"nodes", nodes}, {"edges", edges}};
}

}  // namespace ontokms::nav
