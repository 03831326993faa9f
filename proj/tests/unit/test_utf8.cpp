#include <gtest/gtest.h>

#include <varcorp/utf8.hpp>

#include "oracles.hpp"

namespace utf8 = varcorp::utf8;

TEST(Utf8, DecodesMultiByteSequences)
{
	const std::string s = "a減𠀀";
	EXPECT_EQ(utf8::decode(s, 0).value, U'a');
	EXPECT_EQ(utf8::decode(s, 1).value, U'減');
	EXPECT_EQ(utf8::decode(s, 1).length, 3u);
	EXPECT_EQ(utf8::decode(s, 4).value, U'\U00020000');
	EXPECT_EQ(utf8::decode(s, 4).length, 4u);
	EXPECT_EQ(utf8::length(s), 3u);
}

TEST(Utf8, InvalidBytesBecomeReplacementOfLengthOne)
{
	const std::string s = "\xE6\xB8x\xFF";
	EXPECT_EQ(utf8::decode(s, 0).value, U'�');
	EXPECT_EQ(utf8::decode(s, 0).length, 1u);
	EXPECT_EQ(utf8::length(s), 4u);
}

TEST(Utf8, AppendRoundTripsAgainstIndependentCodec)
{
	std::string out;
	const std::u32string cps = U"aé減\U0002A6A5";
	for (char32_t c : cps) utf8::append(out, c);
	EXPECT_EQ(out, oracle::to_u8(cps));
	EXPECT_EQ(oracle::to_u32(out), cps);
}

TEST(Utf8, BoundariesEndWithSize)
{
	const std::string s = "ab減";
	EXPECT_EQ(utf8::boundaries(s), (std::vector<std::size_t>{ 0, 1, 2, 5 }));
}

TEST(Utf8, TrimHandlesIdeographicAndNoBreakSpace)
{
	EXPECT_EQ(utf8::trim("　 減肥 \n"), "減肥");
	EXPECT_EQ(utf8::trim(" \t "), "");
}

TEST(Utf8, Classes)
{
	EXPECT_TRUE(utf8::is_cjk(U'減'));
	EXPECT_TRUE(utf8::is_cjk(U'，'));
	EXPECT_FALSE(utf8::is_cjk(U'a'));
	EXPECT_TRUE(utf8::is_space(0x3000));
	EXPECT_TRUE(utf8::is_punctuation(U'。'));
	EXPECT_TRUE(utf8::is_punctuation(U'!'));
	EXPECT_FALSE(utf8::is_punctuation(U'好'));
	EXPECT_EQ(utf8::ascii_lower("ABC減"), "abc減");
}
