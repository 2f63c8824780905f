#include <gtest/gtest.h>

#include "ontokms/error.hpp"

using namespace ontokms;

TEST(ErrorTest, StatusMappingIsFixed) {
  EXPECT_EQ(http_status(ErrorCode::NotFound), 404);
  EXPECT_EQ(http_status(ErrorCode::Conflict), 409);
  EXPECT_EQ(http_status(ErrorCode::Cycle), 409);
  EXPECT_EQ(http_status(ErrorCode::Parse), 422);
  EXPECT_EQ(http_status(ErrorCode::Validation), 422);
  EXPECT_EQ(http_status(ErrorCode::Io), 500);
}

TEST(ErrorTest, CodeNames) {
  EXPECT_EQ(to_string(ErrorCode::NotFound), "NotFound");
  EXPECT_EQ(to_string(ErrorCode::Cycle), "Cycle");
  EXPECT_EQ(to_string(ErrorCode::Io), "Io");
}

TEST(ErrorTest, ParseErrorCarriesPosition) {
  ParseError e("unexpected token", 3, 14);
  EXPECT_EQ(e.code(), ErrorCode::Parse);
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 14u);
  EXPECT_EQ(e.detail()["line"], 3);
  EXPECT_EQ(e.detail()["column"], 14);
  EXPECT_NE(std::string(e.what()).find("line 3, column 14"), std::string::npos);
}
