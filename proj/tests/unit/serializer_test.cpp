#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>

#include "ontokms/error.hpp"
#include "ontokms/rdf/serializer.hpp"
#include "random_rdf.hpp"
#include "temp_dir.hpp"

using namespace ontokms;
using rdf::Term;
using rdf::Triple;
using ontokms::testing::TempDir;

namespace {

Triple t(const std::string& s, const std::string& p, const Term& o) {
  return {Term::iri("http://e/" + s), Term::iri("http://e/" + p), o};
}

rdf::TripleStore from(const std::vector<Triple>& triples) {
  rdf::TripleStore store;
  for (const auto& x : triples) store.insert(x);
  return store;
}

}  // namespace

TEST(SerializerTest, EmptyStoreIsEmptyString) {
  rdf::TripleStore store;
  EXPECT_EQ(rdf::serialize(store, rdf::Syntax::NTriples), "");
  EXPECT_EQ(rdf::serialize(store, rdf::Syntax::Turtle), "");
}

TEST(SerializerTest, SingleTripleIsOneLine) {
  const auto store = from({t("s", "p", Term::literal("v", "en"))});
  EXPECT_EQ(rdf::serialize(store, rdf::Syntax::NTriples), "<http://e/s> <http://e/p> \"v\"@en .\n");
}

TEST(SerializerTest, InsertionOrderDoesNotMatter) {
  std::array<Triple, 3> triples = {t("a", "p", Term::iri("http://e/b")), t("b", "p", Term::literal("x")),
                                   t("a", "q", Term::literal("y", "pt"))};
  std::sort(triples.begin(), triples.end());
  std::string first;
  do {
    const auto text = rdf::serialize(from({triples.begin(), triples.end()}), rdf::Syntax::NTriples);
    if (first.empty()) first = text;
    EXPECT_EQ(text, first);
  } while (std::next_permutation(triples.begin(), triples.end()));
}

TEST(SerializerTest, NTriplesLinesAreSorted) {
  ontokms::testing::Rng rng(7);
  const auto store = ontokms::testing::random_roundtrip_store(rng, 60);
  const auto text = rdf::serialize(store, rdf::Syntax::NTriples);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    ASSERT_NE(end, std::string::npos);
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  EXPECT_EQ(lines.size(), store.size());
  EXPECT_TRUE(std::is_sorted(lines.begin(), lines.end()));
}

TEST(SerializerTest, TurtleGroupsBySubject) {
  const auto store = from({t("a", "p", Term::literal("1")), t("a", "q", Term::literal("2")),
                           t("b", "p", Term::literal("3"))});
  const auto text = rdf::serialize(store, rdf::Syntax::Turtle);
  const auto a = text.find("<http://e/a>");
  ASSERT_NE(a, std::string::npos);
  EXPECT_EQ(text.find("<http://e/a>", a + 1), std::string::npos);
  EXPECT_NE(text.find("<http://e/b>"), std::string::npos);
}

TEST(SerializerTest, RoundTripBothSyntaxes) {
  ontokms::testing::Rng rng(99);
  for (int i = 0; i < 50; ++i) {
    const auto store = ontokms::testing::random_roundtrip_store(rng, 80);
    for (auto syntax : {rdf::Syntax::Turtle, rdf::Syntax::NTriples}) {
      const auto text = rdf::serialize(store, syntax);
      const auto back = from(rdf::parse_rdf(text, syntax));
      ASSERT_TRUE(ontokms::testing::same_triples(store, back)) << text;
      EXPECT_EQ(rdf::serialize(back, syntax), text);
    }
  }
}

TEST(SnapshotTest, SaveLoadEmptyAndSmall) {
  TempDir dir("snapshot");
  rdf::TripleStore empty;
  rdf::save_snapshot(empty, dir / "empty.nt");
  EXPECT_TRUE(rdf::load_snapshot(dir / "empty.nt").empty());

  const auto store = from({t("a", "p", Term::literal("x")), t("b", "p", Term::iri("http://e/a")),
                           t("c", "q", Term::literal("y", "en"))});
  rdf::save_snapshot(store, dir / "s.nt");
  EXPECT_TRUE(ontokms::testing::same_triples(rdf::load_snapshot(dir / "s.nt"), store));
}

TEST(SnapshotTest, LoadIgnoresLaterMutations) {
  TempDir dir("snapshot");
  auto store = from({t("a", "p", Term::literal("x")), t("b", "p", Term::literal("y"))});
  rdf::save_snapshot(store, dir / "s.nt");
  const auto saved = rdf::serialize(store, rdf::Syntax::NTriples);
  store.insert(t("c", "p", Term::literal("z")));
  store.remove(t("a", "p", Term::literal("x")));
  const auto loaded = rdf::load_snapshot(dir / "s.nt");
  EXPECT_EQ(rdf::serialize(loaded, rdf::Syntax::NTriples), saved);
  EXPECT_LT(loaded.generation(), store.generation());
}

TEST(SnapshotTest, CorruptOrMissingFileFails) {
  TempDir dir("snapshot");
  {
    std::ofstream out(dir / "bad.nt");
    out << "<http://e/a> <http://e/p> \"ok\" .\n<http://e/a> <http://e/p> broken\n";
  }
  EXPECT_THROW(rdf::load_snapshot(dir / "bad.nt"), ParseError);
  try {
    rdf::load_snapshot(dir / "missing.nt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST(SnapshotTest, UnwritableTargetIsIo) {
  TempDir dir("snapshot");
  std::filesystem::create_directories(dir / "s.nt.tmp");
  try {
    rdf::save_snapshot(rdf::TripleStore{}, dir / "s.nt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}
