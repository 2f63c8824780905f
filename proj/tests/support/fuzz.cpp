#include "fuzz.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "ontokms/error.hpp"
#include "ontokms/rdf/vocabulary.hpp"

namespace ontokms::testing {

namespace {

using Rng = std::mt19937_64;

const std::vector<std::string> kWords = {
    "seizure", "crise", "epilepsia", "epiléptica", "focal", "generalizada", "tonic", "clônica",
    "eeg", "spike", "onda", "ausência", "absence", "syndrome", "síndrome", "sleep", "sono",
    "aura", "motor", "mioclonia", "west", "lennox", "ictal", "interictal", "Eletroencefalografia"};

struct Graph {
  std::set<std::string> concepts;
  std::multimap<std::string, std::string> child_to_parent;
  std::multimap<std::string, std::string> parent_to_child;
};

Graph read_graph(const rdf::TripleStore& store) {
  Graph g;
  const std::string type(rdf::vocab::kRdfType), owl_class(rdf::vocab::kOwlClass);
  const std::string sub(rdf::vocab::kRdfsSubClassOf);
  for (const auto& t : store.triples()) {
    if (t.predicate.value() == type && t.object.value() == owl_class) g.concepts.insert(t.subject.value());
    if (t.predicate.value() == sub && t.object.is_iri()) {
      g.child_to_parent.emplace(t.subject.value(), t.object.value());
      g.parent_to_child.emplace(t.object.value(), t.subject.value());
    }
  }
  return g;
}

std::set<std::string> descendants_or_self(const Graph& g, const std::string& id) {
  std::set<std::string> seen{id};
  std::deque<std::string> queue{id};
  while (!queue.empty()) {
    const std::string cur = queue.front();
    queue.pop_front();
    auto [lo, hi] = g.parent_to_child.equal_range(cur);
    for (auto it = lo; it != hi; ++it) {
      if (seen.insert(it->second).second) queue.push_back(it->second);
    }
  }
  return seen;
}

class Fuzzer {
 public:
  Fuzzer(kb::KnowledgeBase& kb, const FuzzConfig& config)
      : kb_(kb), config_(config), rng_(config.seed) {
    for (auto name : onto::kRootNames) roots_.insert(kb.base_iri() + std::string(name));
  }

  FuzzStats run() {
    for (step_ = 0; step_ < config_.steps; ++step_) {
      if (pending_fix_) {
        repair();
      } else if (config_.inject_every && step_ % config_.inject_every == config_.inject_every / 2) {
        inject();
      } else {
        random_op();
      }
      if (config_.check_each_step) check_state();
    }
    return stats_;
  }

 private:
  template <class T>
  const T& pick(const std::vector<T>& from) {
    return from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng_)];
  }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::string text(std::size_t min_words, std::size_t max_words) {
    const auto n = std::uniform_int_distribution<std::size_t>(min_words, max_words)(rng_);
    std::string out;
    for (std::size_t i = 0; i < n; ++i) out += (i ? " " : "") + pick(kWords);
    return out;
  }

  std::vector<std::string> non_roots() {
    std::vector<std::string> out;
    for (const auto& c : kb_.ontology().concept_ids()) {
      if (!roots_.count(c)) out.push_back(c);
    }
    return out;
  }

  std::vector<std::string> random_parents(const std::vector<std::string>& pool) {
    std::set<std::string> chosen{pick(pool)};
    if (coin(0.25)) chosen.insert(pick(pool));
    return {chosen.begin(), chosen.end()};
  }

  void fail(const std::string& what) {
    std::ostringstream s;
    s << "step " << step_ << ": " << what;
    stats_.failures.push_back(s.str());
  }

  /// Runs `op`, expecting success (nullopt) or exactly the given error code.
  template <class F>
  void attempt(const std::string& name, std::optional<ErrorCode> expected, F op) {
    ++stats_.per_op[name];
    const std::size_t log_before = kb_.log().size();
    const std::uint64_t gen_before = kb_.store().generation();
    std::optional<ErrorCode> got;
    std::string message;
    try {
      op();
    } catch (const Error& e) {
      got = e.code();
      message = e.what();
    }
    if (got != expected) {
      fail(name + ": expected " + (expected ? std::string(to_string(*expected)) : "success") +
           ", got " + (got ? std::string(to_string(*got)) + " (" + message + ")" : "success"));
    }
    if (got) {
      ++stats_.rejected;
      if (kb_.log().size() != log_before) fail(name + ": rejected operation wrote a change record");
      if (kb_.store().generation() != gen_before) fail(name + ": rejected operation changed the store");
    } else {
      ++stats_.applied;
      if (kb_.log().size() != log_before + 1) {
        fail(name + ": expected exactly one change record, got " +
             std::to_string(kb_.log().size() - log_before));
      }
    }
  }

  onto::Concept concept_request(const std::string& id, const std::vector<std::string>& parents) {
    onto::Concept c;
    c.id = id;
    c.parents = {parents.begin(), parents.end()};
    c.labels = {{"en", text(1, 3)}, {"pt", text(1, 3)}};
    c.comments = {{"en", text(2, 8)}, {"pt", text(2, 8)}};
    return c;
  }

  void random_op() {
    const auto concepts = kb_.ontology().concept_ids();
    const auto others = non_roots();
    const std::size_t n = concepts.size();
    // Keep the population roughly stable.
    std::vector<double> weights{n < 120 ? 30.0 : 18.0,  // create
                                14,                      // annotate
                                16,                      // move
                                n > 260 ? 24.0 : 10.0,   // delete
                                8,                       // rename
                                7,                       // import
                                config_.ingest ? 10.0 : 0.0};
    const int op = std::discrete_distribution<int>(weights.begin(), weights.end())(rng_);
    const Graph g = read_graph(kb_.store());
    const std::string fresh = kb_.base_iri() + "F" + std::to_string(step_);

    switch (op) {
      case 0: {  // create
        const double r = std::uniform_real_distribution<double>()(rng_);
        if (r < 0.05) {
          auto c = concept_request(pick(concepts), random_parents(concepts));
          attempt("create", ErrorCode::Conflict, [&] { kb_.create_concept(c); });
        } else if (r < 0.10) {
          auto c = concept_request(fresh, random_parents(concepts));
          c.labels.erase("pt");
          attempt("create", ErrorCode::Validation, [&] { kb_.create_concept(c); });
        } else if (r < 0.13) {
          auto c = concept_request(fresh, {fresh});
          attempt("create", ErrorCode::Cycle, [&] { kb_.create_concept(c); });
        } else {
          auto c = concept_request(fresh, random_parents(concepts));
          attempt("create", std::nullopt, [&] { kb_.create_concept(c); });
        }
        break;
      }
      case 1: {  // annotate
        const std::string id = pick(concepts);
        onto::LangMap labels, comments;
        if (coin(0.6)) labels[coin(0.5) ? "en" : "pt"] = text(1, 3);
        if (labels.empty() || coin(0.4)) comments[coin(0.5) ? "en" : "pt"] = text(2, 6);
        if (coin(0.05)) {
          labels["fr"] = "étiquette";
          attempt("annotate", ErrorCode::Validation, [&] { kb_.annotate_concept(id, labels, comments); });
        } else {
          attempt("annotate", std::nullopt, [&] { kb_.annotate_concept(id, labels, comments); });
        }
        break;
      }
      case 2: {  // move
        if (others.empty()) break;
        const std::string id = pick(others);
        const auto below = descendants_or_self(g, id);
        std::vector<std::string> parents;
        if (coin(0.3)) {
          // Aim at a descendant (or the node itself) to provoke a cycle.
          std::vector<std::string> pool(below.begin(), below.end());
          parents = {pick(pool)};
          if (coin(0.5)) parents.push_back(pick(concepts));
        } else {
          parents = random_parents(concepts);
        }
        const bool cycle = std::any_of(parents.begin(), parents.end(),
                                       [&](const std::string& p) { return below.count(p) != 0; });
        attempt("move", cycle ? std::optional(ErrorCode::Cycle) : std::nullopt, [&] {
          kb_.move_concept(id, {parents.begin(), parents.end()});
        });
        break;
      }
      case 3: {  // delete
        if (coin(0.03)) {
          const std::string root = *roots_.begin();
          attempt("delete", ErrorCode::Conflict,
                  [&] { kb_.delete_concept(root, onto::DeleteMode::ReparentChildren); });
          break;
        }
        if (others.empty()) break;
        const std::string id = pick(others);
        const bool has_children = g.parent_to_child.count(id) != 0;
        const auto mode = coin(0.5) ? onto::DeleteMode::RefuseIfChildren : onto::DeleteMode::ReparentChildren;
        const bool refused = has_children && mode == onto::DeleteMode::RefuseIfChildren;
        attempt("delete", refused ? std::optional(ErrorCode::Conflict) : std::nullopt,
                [&] { kb_.delete_concept(id, mode); });
        break;
      }
      case 4: {  // rename
        if (others.empty()) break;
        const std::string id = pick(others);
        if (coin(0.1)) {
          const std::string taken = pick(concepts);
          attempt("rename", ErrorCode::Conflict, [&] { kb_.rename_concept(id, taken); });
        } else {
          const std::string target = kb_.base_iri() + "R" + std::to_string(step_);
          attempt("rename", std::nullopt, [&] { kb_.rename_concept(id, target); });
        }
        break;
      }
      case 5: {  // import a well-formed concept
        const std::string id = kb_.base_iri() + "I" + std::to_string(step_);
        std::string ttl = "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
                          "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n";
        ttl += "<" + id + "> a owl:Class ;\n";
        for (const auto& p : random_parents(concepts)) ttl += "  rdfs:subClassOf <" + p + "> ;\n";
        ttl += "  rdfs:label \"" + text(1, 3) + "\"@en, \"" + text(1, 3) + "\"@pt ;\n";
        ttl += "  rdfs:comment \"" + text(2, 6) + "\"@en, \"" + text(2, 6) + "\"@pt .\n";
        attempt("import", std::nullopt, [&] { kb_.import_rdf(ttl, rdf::Syntax::Turtle, "fuzz"); });
        break;
      }
      case 6: {  // ingest
        std::string jsonl;
        const int rows = std::uniform_int_distribution<int>(1, 4)(rng_);
        for (int i = 0; i < rows; ++i) {
          std::string id = "rec" + std::to_string(next_record_);
          if (next_record_ > 0 && coin(0.15)) {
            id = "rec" + std::to_string(std::uniform_int_distribution<std::size_t>(0, next_record_ - 1)(rng_));
          } else {
            ++next_record_;
          }
          nlohmann::json row = {{"record_id", id},
                                {"table", coin(0.5) ? "exam" : "patient_history"},
                                {"field", "notes"},
                                {"text", coin(0.05) ? "   " : text(3, 12)},
                                {"patient_ref", "P" + std::to_string(i)}};
          jsonl += row.dump() + "\n";
        }
        attempt("ingest", std::nullopt, [&] { kb_.ingest(jsonl, ingest::RecordFormat::Jsonl, "fuzz"); });
        break;
      }
    }
  }

  void inject() {
    const auto others = non_roots();
    if (others.empty()) return;
    const std::string id = pick(others);
    const std::string ttl = "<" + id + "> <" + std::string(rdf::vocab::kRdfsLabel) +
                            "> \"injected duplicate label\"@en .\n";
    attempt("inject", std::nullopt, [&] { kb_.import_rdf(ttl, rdf::Syntax::NTriples, "inject"); });
    injected_subject_ = id;
    pending_fix_ = true;
    ++stats_.injected;
  }

  void repair() {
    const std::string id = injected_subject_;
    attempt("repair", std::nullopt, [&] { kb_.annotate_concept(id, {{"en", text(1, 3)}}, {}); });
    injected_subject_.clear();
    pending_fix_ = false;
  }

  void check_state() {
    if (auto problem = structural_problem(kb_.store()); !problem.empty()) fail(problem);
    if (!onto::is_acyclic(kb_.store())) fail("is_acyclic reports a cycle");
    const auto report = kb_.validate();
    if (injected_subject_.empty()) {
      if (!report.ok()) fail("unexpected violation: " + report.violations.front().message);
    } else {
      const bool only_injected = report.violations.size() == 1 &&
                                 report.violations[0].kind == onto::ViolationKind::Annotation &&
                                 report.violations[0].subject == injected_subject_;
      if (!only_injected) {
        fail("expected exactly the injected annotation violation, got " +
             std::to_string(report.violations.size()) + " violations");
      }
    }
  }

  kb::KnowledgeBase& kb_;
  FuzzConfig config_;
  Rng rng_;
  std::set<std::string> roots_;
  std::size_t step_ = 0;
  std::size_t next_record_ = 0;
  std::string injected_subject_;
  bool pending_fix_ = false;
  FuzzStats stats_;
};

}  // namespace

std::string structural_problem(const rdf::TripleStore& store) {
  const Graph g = read_graph(store);
  for (const auto& [child, parent] : g.child_to_parent) {
    if (!g.concepts.count(parent)) return "dangling parent " + parent + " of " + child;
  }
  // Kahn's algorithm over subClassOf edges: leftovers mean a cycle.
  std::map<std::string, std::size_t> indegree;
  for (const auto& [child, parent] : g.child_to_parent) {
    indegree[child];
    ++indegree[parent];
  }
  std::deque<std::string> ready;
  for (const auto& [node, d] : indegree) {
    if (d == 0) ready.push_back(node);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const std::string node = ready.front();
    ready.pop_front();
    ++removed;
    auto [lo, hi] = g.child_to_parent.equal_range(node);
    for (auto it = lo; it != hi; ++it) {
      if (--indegree[it->second] == 0) ready.push_back(it->second);
    }
  }
  if (removed != indegree.size()) return "subClassOf cycle";
  return {};
}

FuzzStats run_fuzz(kb::KnowledgeBase& kb, const FuzzConfig& config) {
  return Fuzzer(kb, config).run();
}

}  // namespace ontokms::testing
