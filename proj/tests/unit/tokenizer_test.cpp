#include <gtest/gtest.h>

#include "ontokms/search/tokenizer.hpp"

using ontokms::search::tokenize;
using Tokens = std::vector<std::string>;

TEST(TokenizerTest, FoldsAccentsAndCase) {
  EXPECT_EQ(tokenize("Crises Epilépticas Generalizadas"), (Tokens{"crises", "epilepticas", "generalizadas"}));
}

TEST(TokenizerTest, Empty) { EXPECT_TRUE(tokenize("").empty()); }

TEST(TokenizerTest, SplitsOnPunctuation) {
  EXPECT_EQ(tokenize("EEG-based"), (Tokens{"eeg", "based"}));
  EXPECT_EQ(tokenize("a, b; (seizure)!"), (Tokens{"seizure"}));
}

TEST(TokenizerTest, KeepsDigitsAndDuplicates) {
  EXPECT_EQ(tokenize("seizure seizure 10Hz"), (Tokens{"seizure", "seizure", "10hz"}));
}

TEST(TokenizerTest, CompatibilityForms) {
  EXPECT_EQ(tokenize("ﬁbrosis ÇÃO"), (Tokens{"fibrosis", "cao"}));
}

TEST(TokenizerTest, CodePointsAndTruncation) {
  EXPECT_EQ(ontokms::search::to_code_points("aé"), std::u32string(U"aé"));
  EXPECT_EQ(ontokms::search::to_code_points("\xff"), std::u32string(U"�"));
  EXPECT_EQ(ontokms::search::truncate_utf8("épilepsie", 3), "épi…");
  EXPECT_EQ(ontokms::search::truncate_utf8("abc", 3), "abc");
}
