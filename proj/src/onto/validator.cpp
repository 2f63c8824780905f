#include "ontokms/onto/validator.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "ontokms/rdf/vocabulary.hpp"

namespace ontokms::onto {

namespace {

using rdf::Term;

// Adjacency over interned IRIs.
struct Graph {
  std::vector<std::string> names;
  std::unordered_map<std::string, int> ids;
  std::vector<std::vector<int>> out;

  int intern(const std::string& name) {
    auto [it, inserted] = ids.try_emplace(name, static_cast<int>(names.size()));
    if (inserted) {
      names.push_back(name);
      out.emplace_back();
    }
    return it->second;
  }
};

Graph subclass_graph(const rdf::TripleStore& store) {
  Graph g;
  const Term sub = Term::iri(std::string(rdf::vocab::kRdfsSubClassOf));
  for (const auto& t : store.match(std::nullopt, sub, std::nullopt)) {
    if (!t.object.is_iri()) continue;
    const int from = g.intern(t.subject.value());
    const int to = g.intern(t.object.value());
    g.out[from].push_back(to);
  }
  return g;
}

// Strongly connected components that contain a cycle (size > 1 or a
// self-loop). Iterative Tarjan.
std::vector<std::vector<int>> cyclic_components(const Graph& g) {
  const int n = static_cast<int>(g.names.size());
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> result;
  int counter = 0;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<std::pair<int, std::size_t>> work{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!work.empty()) {
      auto& [v, edge] = work.back();
      if (edge < g.out[v].size()) {
        const int w = g.out[v][edge++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<int> component;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        const bool self_loop =
            std::find(g.out[v].begin(), g.out[v].end(), v) != g.out[v].end();
        if (component.size() > 1 || self_loop) result.push_back(std::move(component));
      }
      const int finished = v;
      work.pop_back();
      if (!work.empty()) {
        const int parent = work.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return result;
}

std::string annotation_issues(const std::vector<Term>& values, const char* what) {
  std::map<std::string, int> per_lang;
  std::vector<std::string> issues;
  for (const Term& v : values) {
    if (!v.is_literal()) {
      issues.push_back(std::string("non-literal ") + what + " " + v.canonical());
      continue;
    }
    if (std::find(kLanguages.begin(), kLanguages.end(), v.lang()) == kLanguages.end()) {
      issues.push_back(v.lang().empty()
                           ? std::string(what) + " without language tag"
                           : std::string("unexpected ") + what + " language '" + v.lang() + "'");
      continue;
    }
    ++per_lang[v.lang()];
  }
  for (auto lang : kLanguages) {
    const int n = per_lang[std::string(lang)];
    if (n == 0) {
      issues.push_back(std::string("missing ") + std::string(lang) + " " + what);
    } else if (n > 1) {
      issues.push_back(std::to_string(n) + " " + std::string(lang) + " " + what + "s");
    }
  }
  std::string joined;
  for (const auto& issue : issues) {
    if (!joined.empty()) joined += "; ";
    joined += issue;
  }
  return joined;
}

}  // namespace

char kind_letter(ViolationKind kind) {
  return static_cast<char>('a' + static_cast<int>(kind));
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Cycle: return "cycle";
    case ViolationKind::Roots: return "roots";
    case ViolationKind::Unrooted: return "unrooted";
    case ViolationKind::Annotation: return "annotation";
    case ViolationKind::Dangling: return "dangling";
  }
  return "cycle";
}

std::size_t ValidationReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; }));
}

bool is_acyclic(const rdf::TripleStore& store) {
  const Graph g = subclass_graph(store);
  const std::size_t n = g.names.size();
  // 0 = unvisited, 1 = on the current path, 2 = done
  std::vector<int> colour(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (colour[root] != 0) continue;
    std::vector<std::pair<int, std::size_t>> work{{static_cast<int>(root), 0}};
    colour[root] = 1;
    while (!work.empty()) {
      auto& [v, edge] = work.back();
      if (edge < g.out[v].size()) {
        const int w = g.out[v][edge++];
        if (colour[w] == 1) return false;
        if (colour[w] == 0) {
          colour[w] = 1;
          work.emplace_back(w, 0);
        }
      } else {
        colour[v] = 2;
        work.pop_back();
      }
    }
  }
  return true;
}

ValidationReport validate(const rdf::TripleStore& store, std::string_view base_iri) {
  ValidationReport report;
  const Term type = Term::iri(std::string(rdf::vocab::kRdfType));
  const Term owl_class = Term::iri(std::string(rdf::vocab::kOwlClass));
  const Term sub = Term::iri(std::string(rdf::vocab::kRdfsSubClassOf));
  const Term label = Term::iri(std::string(rdf::vocab::kRdfsLabel));
  const Term comment = Term::iri(std::string(rdf::vocab::kRdfsComment));

  std::set<std::string> concepts;
  for (const auto& t : store.match(std::nullopt, type, owl_class)) concepts.insert(t.subject.value());
  report.concepts = concepts.size();

  std::set<std::string> roots;
  for (auto name : kRootNames) roots.insert(std::string(base_iri) + std::string(name));

  auto add = [&](ViolationKind kind, std::string subject, std::string message) {
    report.violations.push_back({kind, std::move(subject), std::move(message)});
  };

  // (a)
  const Graph graph = subclass_graph(store);
  for (const auto& component : cyclic_components(graph)) {
    std::vector<std::string> members;
    for (int v : component) members.push_back(graph.names[v]);
    std::sort(members.begin(), members.end());
    std::string message = "subClassOf cycle among";
    for (const auto& m : members) message += " " + m;
    add(ViolationKind::Cycle, members.front(), message);
  }

  std::map<std::string, std::vector<std::string>> children;
  for (const auto& c : concepts) {
    const Term subject = Term::iri(c);
    std::vector<Term> labels, comments;
    std::size_t parent_count = 0;
    for (const auto& t : store.match(subject, std::nullopt, std::nullopt)) {
      if (t.predicate == sub) {
        ++parent_count;
        // (e)
        if (!t.object.is_iri() || !concepts.count(t.object.value())) {
          add(ViolationKind::Dangling, c,
              "subClassOf target " + t.object.canonical() + " is not a concept");
        } else {
          children[t.object.value()].push_back(c);
        }
      } else if (t.predicate == label) {
        labels.push_back(t.object);
      } else if (t.predicate == comment) {
        comments.push_back(t.object);
      }
    }
    report.labels += labels.size();
    report.comments += comments.size();

    // (b)
    if (roots.count(c)) {
      if (parent_count != 0) add(ViolationKind::Roots, c, "root concept has parents");
    } else if (parent_count == 0) {
      add(ViolationKind::Roots, c, "parentless concept is not one of the four roots");
    }

    // (d)
    if (auto issues = annotation_issues(labels, "label"); !issues.empty()) {
      add(ViolationKind::Annotation, c, issues);
    }
    if (auto issues = annotation_issues(comments, "comment"); !issues.empty()) {
      add(ViolationKind::Annotation, c, issues);
    }
  }
  for (const auto& r : roots) {
    if (!concepts.count(r)) add(ViolationKind::Roots, r, "root concept is missing");
  }

  // (c)
  std::set<std::string> reached;
  std::deque<std::string> queue;
  for (const auto& r : roots) {
    if (concepts.count(r)) {
      reached.insert(r);
      queue.push_back(r);
    }
  }
  while (!queue.empty()) {
    const std::string current = queue.front();
    queue.pop_front();
    for (const auto& child : children[current]) {
      if (reached.insert(child).second) queue.push_back(child);
    }
  }
  for (const auto& c : concepts) {
    if (!roots.count(c) && !reached.count(c)) {
      add(ViolationKind::Unrooted, c, "concept does not reach any root");
    }
  }

  std::sort(report.violations.begin(), report.violations.end(),
            [](const Violation& a, const Violation& b) {
              return std::tie(a.kind, a.subject, a.message) <
                     std::tie(b.kind, b.subject, b.message);
            });
  return report;
}

nlohmann::json to_json(const ValidationReport& report) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"kind", std::string(1, kind_letter(v.kind))},
                          {"name", to_string(v.kind)},
                          {"subject", v.subject},
                          {"message", v.message}});
  }
  return {{"concepts", report.concepts},
          {"labels", report.labels},
          {"comments", report.comments},
          {"violations", violations}};
}

std::string to_text(const ValidationReport& report) {
  std::ostringstream out;
  out << "concepts: " << report.concepts << "\n"
      << "labels: " << report.labels << "\n"
      << "comments: " << report.comments << "\n";
  for (const auto& v : report.violations) {
    out << "(" << kind_letter(v.kind) << ") " << to_string(v.kind) << " " << v.subject << ": "
        << v.message << "\n";
  }
  out << report.violations.size() << " violations\n";
  return out.str();
}

}  // namespace ontokms::onto
