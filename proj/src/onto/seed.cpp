#include "ontokms/onto/seed.hpp"

#include <cstdio>
#include <string>

#include "ontokms/rdf/vocabulary.hpp"

namespace ontokms::onto {

namespace {

struct Branch {
  std::string_view local;
  std::string_view label_en;
  std::string_view label_pt;
  std::string_view comment_en;
  std::string_view comment_pt;
  // Synthetic placeholder vocabulary for the generated descendants.
  std::string_view noun_en;
  std::string_view noun_pt;
  std::size_t synthetic;  // descendants generated under this branch
};

// 30 + 45 + 40 + 26 synthetic descendants + 4 roots = 145 classes.
constexpr Branch kBranches[] = {
    {"GeneralConcept", "General concepts", "Conceitos gerais",
     "Branch for shared epilepsy vocabulary reused by the other branches.",
     "Ramo para o vocabulário comum de epilepsia reutilizado pelos outros ramos.",
     "general concept", "conceito geral", 30},
    {"SeizureType", "Seizure Types", "Tipos de crises",
     "Branch classifying epileptic seizure types.",
     "Ramo que classifica os tipos de crises epilépticas.", "seizure type", "tipo de crise", 45},
    {"EpilepticSyndrome", "Epileptic Syndromes", "Síndromes epilépticas",
     "Branch classifying epileptic syndromes.", "Ramo que classifica as síndromes epilépticas.",
     "epileptic syndrome", "síndrome epiléptica", 40},
    {"Electroencephalography", "Electroencephalography", "Eletroencefalografia",
     "Branch for electroencephalography concepts.",
     "Ramo para conceitos de eletroencefalografia.", "EEG concept", "conceito de EEG", 26},
};

constexpr std::size_t kGroupsPerBranch = 5;

std::string two_digits(std::size_t n) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02zu", n);
  return buf;
}

class SeedWriter {
 public:
  SeedWriter(rdf::TripleStore& store, std::string_view base)
      : store_(store),
        base_(base),
        type_(rdf::Term::iri(std::string(rdf::vocab::kRdfType))),
        owl_class_(rdf::Term::iri(std::string(rdf::vocab::kOwlClass))),
        sub_(rdf::Term::iri(std::string(rdf::vocab::kRdfsSubClassOf))),
        label_(rdf::Term::iri(std::string(rdf::vocab::kRdfsLabel))),
        comment_(rdf::Term::iri(std::string(rdf::vocab::kRdfsComment))) {}

  rdf::Term add(const std::string& local, const std::vector<rdf::Term>& parents,
                const std::string& label_en, const std::string& label_pt,
                const std::string& comment_en, const std::string& comment_pt) {
    const rdf::Term id = rdf::Term::iri(base_ + local);
    store_.insert({id, type_, owl_class_});
    for (const auto& p : parents) store_.insert({id, sub_, p});
    store_.insert({id, label_, rdf::Term::literal(label_en, "en")});
    store_.insert({id, label_, rdf::Term::literal(label_pt, "pt")});
    store_.insert({id, comment_, rdf::Term::literal(comment_en, "en")});
    store_.insert({id, comment_, rdf::Term::literal(comment_pt, "pt")});
    return id;
  }

 private:
  rdf::TripleStore& store_;
  std::string base_;
  rdf::Term type_, owl_class_, sub_, label_, comment_;
};

}  // namespace

rdf::TripleStore generate_seed(std::string_view base_iri) {
  rdf::TripleStore store;
  SeedWriter writer(store, base_iri);
  for (const Branch& b : kBranches) {
    const std::string branch(b.local);
    const rdf::Term root = writer.add(branch, {}, std::string(b.label_en), std::string(b.label_pt),
                                      std::string(b.comment_en), std::string(b.comment_pt));
    const std::string synthetic_en =
        "Synthetic placeholder under " + std::string(b.label_en) + "; not a clinical term.";
    const std::string synthetic_pt =
        "Marcador sintético sob " + std::string(b.label_pt) + "; não é um termo clínico.";

    // Level 1: groups directly under the root.
    std::vector<rdf::Term> groups;
    for (std::size_t g = 1; g <= kGroupsPerBranch; ++g) {
      groups.push_back(writer.add("SYN-" + branch + "Group" + two_digits(g), {root},
                                  "Synthetic " + std::string(b.noun_en) + " group " + std::to_string(g),
                                  "Grupo sintético de " + std::string(b.noun_pt) + " " + std::to_string(g),
                                  synthetic_en, synthetic_pt));
    }
    // Level 2: members spread round-robin over the groups; every seventh one
    // also sits under the next group so the hierarchy is a DAG, not a tree.
    for (std::size_t i = 1; i + kGroupsPerBranch <= b.synthetic; ++i) {
      const std::size_t group = (i - 1) % kGroupsPerBranch;
      std::vector<rdf::Term> parents{groups[group]};
      if (i % 7 == 0) parents.push_back(groups[(group + 1) % kGroupsPerBranch]);
      writer.add("SYN-" + branch + two_digits(i), parents,
                 "Synthetic " + std::string(b.noun_en) + " " + std::to_string(i),
                 "Exemplo sintético de " + std::string(b.noun_pt) + " " + std::to_string(i), synthetic_en,
                 synthetic_pt);
    }
  }
  return store;
}

}  // namespace ontokms::onto
