#include <gtest/gtest.h>

#include "hive/error.h"
#include "hive/text.h"

namespace hive {
namespace {

TEST(Normalize, FoldsCasePunctuationAndSpace) {
  EXPECT_EQ(normalize("Pore-Size  Tuning"), "pore size tuning");
  EXPECT_EQ(normalize("  Gas Adsorption. "), "gas adsorption");
  EXPECT_EQ(normalize("Metal–organic"), "metal–organic");  // non-ASCII stays a word byte
  EXPECT_EQ(normalize("!!!"), "");
  EXPECT_EQ(normalize(""), "");
}

TEST(CompareLabels, CaseInsensitiveThenBytes) {
  EXPECT_LT(compare_labels("alpha", "Beta"), 0);
  EXPECT_GT(compare_labels("beta", "Alpha"), 0);
  EXPECT_LT(compare_labels("Zeolite", "zeolite"), 0);
  EXPECT_EQ(compare_labels("same", "same"), 0);
}

TEST(Utf8, Validation) {
  EXPECT_TRUE(is_valid_utf8("caf\xC3\xA9"));
  EXPECT_FALSE(is_valid_utf8("caf\xE9"));
  EXPECT_FALSE(is_valid_utf8("\xC3"));           // truncated
  EXPECT_FALSE(is_valid_utf8("\xC0\xAF"));       // overlong
  EXPECT_FALSE(is_valid_utf8("\xED\xA0\x80"));   // surrogate
  EXPECT_TRUE(is_valid_utf8("\xF0\x9F\x98\x80"));
}

TEST(Utf8, LengthAndLatin1) {
  EXPECT_EQ(utf8_length("abc"), 3u);
  EXPECT_EQ(utf8_length("caf\xC3\xA9"), 4u);
  EXPECT_EQ(latin1_to_utf8("caf\xE9"), "caf\xC3\xA9");
  std::string s;
  append_utf8(s, 0x1F600);
  EXPECT_EQ(s, "\xF0\x9F\x98\x80");
}

TEST(Errors, ParseErrorCarriesPosition) {
  ParseError e("bad token", 3, 7);
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 7u);
  EXPECT_EQ(e.code(), ErrorCode::kParse);
  EXPECT_NE(std::string(e.what()).find("line 3, column 7"), std::string::npos);
  EXPECT_TRUE(e.is_user_error());
  EXPECT_FALSE(Error(ErrorCode::kInternal, "x").is_user_error());
  EXPECT_EQ(error_code_name(ErrorCode::kNotFound), "not_found");
}

}  // namespace
}  // namespace hive
