#include "ontokms/rdf/serializer.hpp"

#include <array>
#include <utility>

#include "ontokms/rdf/vocabulary.hpp"

namespace ontokms::rdf {

namespace {

constexpr std::array<std::pair<std::string_view, std::string_view>, 4> kPrefixes{{
    {"owl", vocab::kOwlNs},
    {"rdf", vocab::kRdfNs},
    {"rdfs", vocab::kRdfsNs},
    {"xsd", vocab::kXsdNs},
}};

bool is_simple_local(std::string_view local) {
  if (local.empty()) return false;
  const auto first = static_cast<unsigned char>(local[0]);
  if (!std::isalpha(first) && first != '_') return false;
  for (char c : local) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && u != '_' && u != '-') return false;
  }
  return true;
}

std::string turtle_term(const Term& term) {
  if (term.is_iri()) {
    for (const auto& [prefix, ns] : kPrefixes) {
      const std::string_view value = term.value();
      if (value.substr(0, ns.size()) == ns && is_simple_local(value.substr(ns.size()))) {
        return std::string(prefix) + ":" + std::string(value.substr(ns.size()));
      }
    }
  }
  return term.canonical();
}

std::string serialize_turtle(const TripleStore& store) {
  std::string out;
  for (const auto& [prefix, ns] : kPrefixes) {
    out += "@prefix " + std::string(prefix) + ": <" + std::string(ns) + "> .\n";
  }
  const Term* subject = nullptr;
  const Term* predicate = nullptr;
  for (const Triple& t : store.triples()) {
    if (subject == nullptr || t.subject != *subject) {
      if (subject != nullptr) out += " .\n";
      out += "\n" + t.subject.canonical() + "\n    ";
      subject = &t.subject;
      predicate = nullptr;
    }
    if (predicate == nullptr || t.predicate != *predicate) {
      if (predicate != nullptr) out += " ;\n    ";
      out += t.predicate.value() == vocab::kRdfType ? std::string("a")
                                                     : turtle_term(t.predicate);
      out += ' ';
      predicate = &t.predicate;
    } else {
      out += " ,\n        ";
    }
    out += turtle_term(t.object);
  }
  out += " .\n";
  return out;
}

}  // namespace

std::string serialize(const TripleStore& store, Syntax syntax) {
  if (store.empty()) return {};
  if (syntax == Syntax::Turtle) return serialize_turtle(store);
  std::string out;
  for (const Triple& t : store.triples()) {
    out += to_ntriples_line(t);
    out += '\n';
  }
  return out;
}

}  // namespace ontokms::rdf
