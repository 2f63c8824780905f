#include <gtest/gtest.h>

#include "ontokms/onto/ontology.hpp"
#include "ontokms/onto/seed.hpp"
#include "ontokms/rdf/serializer.hpp"

using namespace ontokms;

TEST(SeedTest, Deterministic) {
  EXPECT_EQ(rdf::serialize(onto::generate_seed(), rdf::Syntax::NTriples),
            rdf::serialize(onto::generate_seed(), rdf::Syntax::NTriples));
}

TEST(SeedTest, ShapeAndNaming) {
  auto store = onto::generate_seed();
  onto::ChangeLog log;
  onto::Ontology ontology(store, log);
  const auto ids = ontology.concept_ids();
  EXPECT_EQ(ids.size(), onto::kSeedConceptCount);
  EXPECT_EQ(ontology.root_ids().size(), 4u);
  for (const auto& id : ids) {
    if (ontology.is_root(id)) continue;
    const auto local = id.substr(onto::kDefaultBaseIri.size());
    EXPECT_EQ(local.rfind("SYN-", 0), 0u) << local;
    const auto c = ontology.get(id);
    EXPECT_EQ(c.labels.size(), 2u);
    EXPECT_EQ(c.comments.size(), 2u);
  }
  EXPECT_EQ(ontology.get(ontology.resolve_id("SeizureType")).labels.at("en"), "Seizure Types");
}

TEST(SeedTest, CustomBase) {
  auto store = onto::generate_seed("urn:x:");
  onto::ChangeLog log;
  onto::Ontology ontology(store, log, "urn:x:");
  EXPECT_TRUE(ontology.is_concept("urn:x:GeneralConcept"));
  EXPECT_EQ(ontology.concept_ids().size(), 145u);
}
