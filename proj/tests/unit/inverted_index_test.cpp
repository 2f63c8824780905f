#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ontokms/search/inverted_index.hpp"
#include "text_oracles.hpp"

using namespace ontokms::search;

namespace {

DocRef doc(const std::string& owner, const std::string& lang = "en") { return {DocKind::ConceptLabel, owner, lang}; }

}  // namespace

TEST(InvertedIndexTest, IndexThenRemoveRestoresState) {
  InvertedIndex index;
  index.index_doc(doc("a"), "seizure onset");
  const auto before = index.to_json();
  index.index_doc(doc("b"), "new seizure");
  index.remove_doc(doc("b"));
  EXPECT_EQ(index.to_json(), before);
}

TEST(InvertedIndexTest, TermFrequency) {
  InvertedIndex index;
  index.index_doc(doc("a"), "seizure seizure");
  EXPECT_EQ(index.tf("seizure", doc("a")), 2u);
  EXPECT_EQ(index.df("seizure"), 1u);
  EXPECT_EQ(index.doc_length(doc("a")), 2u);
}

TEST(InvertedIndexTest, ReindexReplaces) {
  InvertedIndex index;
  index.index_doc(doc("a"), "alpha beta");
  index.index_doc(doc("a"), "gamma");
  EXPECT_EQ(index.df("alpha"), 0u);
  EXPECT_EQ(index.df("gamma"), 1u);
  EXPECT_EQ(index.doc_count(), 1u);
}

TEST(InvertedIndexTest, RandomBuildAndTeardown) {
  std::mt19937_64 rng(44);
  const std::vector<std::string> words = {"aura", "onset", "tonic", "clonic", "focal", "crise"};
  InvertedIndex index;
  std::vector<DocRef> refs;
  for (int i = 0; i < 200; ++i) {
    std::string text;
    for (std::size_t w = rng() % 6; w > 0; --w) text += words[rng() % words.size()] + " ";
    refs.push_back({static_cast<DocKind>(rng() % 3), "o" + std::to_string(i), i % 2 ? "pt" : ""});
    index.index_doc(refs.back(), text);
  }
  std::shuffle(refs.begin(), refs.end(), rng);
  for (const auto& r : refs) index.remove_doc(r);
  EXPECT_EQ(index.to_json(), InvertedIndex{}.to_json());
  EXPECT_TRUE(index.vocabulary().empty());
}

TEST(InvertedIndexTest, TfIdfScores) {
  InvertedIndex index;
  index.index_doc(doc("D1"), "seizure onset");
  index.index_doc(doc("D2"), "seizure free");
  auto hits = index.search("onset", {});
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].doc.owner, "D1");
  EXPECT_NEAR(hits[0].score, std::log(2.0), 1e-12);

  hits = index.search("seizure", {});
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].score, 0.0);
  EXPECT_EQ(hits[0].doc.owner, "D1");
  EXPECT_EQ(hits[1].doc.owner, "D2");

  EXPECT_TRUE(index.search("absent", {}).empty());
}

TEST(InvertedIndexTest, OptionsFilter) {
  InvertedIndex index;
  index.index_doc(doc("a", "en"), "aura");
  index.index_doc(doc("a", "pt"), "aura");
  index.index_doc({DocKind::Record, "r1", ""}, "aura aura");
  SearchOptions options;
  options.lang = "pt";
  auto hits = index.search("aura", options);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].doc.lang, "pt");
  options = {};
  options.kinds = std::set<DocKind>{DocKind::Record};
  hits = index.search("aura", options);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].doc.kind, DocKind::Record);
  options = {};
  options.k = 2;
  EXPECT_EQ(index.search("aura", options).size(), 2u);
}

TEST(InvertedIndexTest, MatchesBruteForce) {
  std::mt19937_64 rng(2);
  const std::vector<std::string> words = {"aura", "onset", "tonic", "clonic", "focal", "crise", "eeg"};
  InvertedIndex index;
  ontokms::testing::DocTexts texts;
  for (int i = 0; i < 150; ++i) {
    std::string text;
    for (std::size_t w = rng() % 8; w > 0; --w) text += words[rng() % words.size()] + " ";
    const DocRef ref{DocKind::ConceptComment, "c" + std::to_string(i), "en"};
    index.index_doc(ref, text);
    texts[ref] = text;
  }
  for (int q = 0; q < 100; ++q) {
    std::string query;
    for (std::size_t w = 1 + rng() % 3; w > 0; --w) query += words[rng() % words.size()] + " ";
    const auto expected = ontokms::testing::brute_force_scores(texts, query);
    SearchOptions options;
    options.k = 1000;
    const auto hits = index.search(query, options);
    ASSERT_EQ(hits.size(), expected.size());
    for (std::size_t h = 0; h < hits.size(); ++h) {
      EXPECT_TRUE(ontokms::testing::relative_close(hits[h].score, expected.at(hits[h].doc), 1e-9));
      if (h > 0) {
        EXPECT_TRUE(hits[h - 1].score > hits[h].score ||
                    (hits[h - 1].score == hits[h].score && hits[h - 1].doc < hits[h].doc));
      }
    }
  }
}

TEST(InvertedIndexTest, Suggestions) {
  InvertedIndex index;
  index.index_doc(doc("a"), "epilepsy seizure");
  auto s = index.suggest("epilepsi");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].query_token, "epilepsi");
  EXPECT_EQ(s[0].candidates, (std::vector<Suggestion>{{"epilepsy", 1}}));

  s = index.suggest("siezure");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].candidates, (std::vector<Suggestion>{{"seizure", 2}}));

  s = index.suggest("seizure epilepsi");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].query_token, "epilepsi");

  EXPECT_TRUE(index.suggest("zzzzzzzz")[0].candidates.empty());
}

TEST(InvertedIndexTest, SuggestionOrderingAndLimit) {
  InvertedIndex index;
  index.index_doc(doc("a"), "abe abd abc xbc abcd zzzz");
  auto s = index.suggest("abf", 1, 5);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].candidates, (std::vector<Suggestion>{{"abc", 1}, {"abd", 1}, {"abe", 1}}));
  s = index.suggest("abf", 2, 2);
  EXPECT_EQ(s[0].candidates, (std::vector<Suggestion>{{"abc", 1}, {"abd", 1}}));
  s = index.suggest("abf", 2, 10);
  EXPECT_EQ(s[0].candidates.back(), (Suggestion{"xbc", 2}));
  EXPECT_TRUE(index.suggest("abc", 2, 5).empty());
}
