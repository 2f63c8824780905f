#include "random_rdf.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "ontokms/rdf/vocabulary.hpp"

namespace ontokms::testing {

using rdf::Term;

const QueryVocabulary& query_vocabulary() {
  static const QueryVocabulary vocab = [] {
    QueryVocabulary v;
    for (int i = 0; i < 12; ++i) v.subjects.push_back(Term::iri("http://ex.org/s" + std::to_string(i)));
    for (int i = 0; i < 4; ++i) v.predicates.push_back(Term::iri("http://ex.org/p" + std::to_string(i)));
    v.predicates.push_back(Term::iri(std::string(rdf::vocab::kRdfType)));
    v.literals = {
        Term::literal("alpha", "en"),     Term::literal("Alpha", "pt"),
        Term::literal("beta"),            Term::literal("gamma delta", "en"),
        Term::literal("épsilon", "pt"),   Term::literal("zeta"),
        Term::literal("eta 7", "en"),     Term::literal("theta", "pt-br"),
        Term::literal("crise focal", "pt"), Term::literal("Seizure", "en"),
    };
    return v;
  }();
  return vocab;
}

rdf::TripleStore random_query_store(Rng& rng, std::size_t max_triples) {
  const auto& v = query_vocabulary();
  rdf::TripleStore store;
  const std::size_t target = std::uniform_int_distribution<std::size_t>(0, max_triples)(rng);
  auto pick = [&](const std::vector<Term>& from) {
    return from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng)];
  };
  // Bounded attempts: the triple space (12*5*22) is finite.
  for (std::size_t attempt = 0; store.size() < target && attempt < target * 4; ++attempt) {
    const Term s = pick(v.subjects);
    const Term p = pick(v.predicates);
    const Term o = std::bernoulli_distribution(0.55)(rng) ? pick(v.subjects) : pick(v.literals);
    store.insert({s, p, o});
  }
  return store;
}

rdf::TripleStore random_roundtrip_store(Rng& rng, std::size_t max_triples) {
  static const std::vector<std::string> iris = {
      "http://epilepsiae.example.org/onto#GeneralConcept",
      "http://epilepsiae.example.org/onto#SYN-SeizureType07",
      "http://www.w3.org/2002/07/owl#Class",
      "http://www.w3.org/2000/01/rdf-schema#label",
      "http://www.w3.org/2000/01/rdf-schema#comment",
      "http://www.w3.org/2000/01/rdf-schema#subClassOf",
      std::string(rdf::vocab::kRdfType),
      "http://ex.org/path/with.dot",
      "http://ex.org/a%20b",
      "http://ex.org/ünïcode",
      "http://ex.org/q?x=1&y=(2)",
      "urn:isbn:0451450523",
      "http://ex.org/trailing.",
      "http://ex.org/1starts-with-digit",
  };
  static const std::vector<std::string> texts = {
      "plain",
      "with \"quotes\"",
      "back\\slash",
      "line\nbreak",
      "carriage\rreturn",
      "tab\there",
      "Síndromes epilépticas",
      "Eletroencefalografia 🧠",
      "",
      "  padded  ",
      "42^^<http://www.w3.org/2001/XMLSchema#integer>",
      "a # not a comment",
      "semi; colon, comma.",
      "'single' quotes",
  };
  static const std::vector<std::string> langs = {"", "en", "pt", "pt-br", "en-gb-oed"};

  auto idx = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  rdf::TripleStore store;
  const std::size_t target = std::uniform_int_distribution<std::size_t>(0, max_triples)(rng);
  for (std::size_t attempt = 0; store.size() < target && attempt < target * 4; ++attempt) {
    const Term s = Term::iri(iris[idx(iris.size())]);
    const Term p = Term::iri(iris[idx(iris.size())]);
    const Term o = std::bernoulli_distribution(0.5)(rng)
                       ? Term::iri(iris[idx(iris.size())])
                       : Term::literal(texts[idx(texts.size())], langs[idx(langs.size())]);
    store.insert({s, p, o});
  }
  return store;
}

bool same_triples(const rdf::TripleStore& a, const rdf::TripleStore& b) {
  auto lines = [](const rdf::TripleStore& s) {
    std::multiset<std::string> out;
    for (const auto& t : s.triples()) out.insert(rdf::to_ntriples_line(t));
    return out;
  };
  return lines(a) == lines(b);
}

}  // namespace ontokms::testing
