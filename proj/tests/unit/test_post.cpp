#include <gtest/gtest.h>

#include <varcorp/post.hpp>

using namespace varcorp;
using namespace std::chrono;

TEST(Timestamp, DefaultsToUtcPlusEight)
{
	const auto t = parse_timestamp("2020-06-01 09:00:00");
	ASSERT_TRUE(t);
	EXPECT_EQ(format_rfc3339(*t), "2020-06-01T01:00:00Z");
}

TEST(Timestamp, HonoursExplicitOffsetsAndFraction)
{
	EXPECT_EQ(format_rfc3339(*parse_timestamp("2020-05-01T10:00:00.123Z")), "2020-05-01T10:00:00Z");
	EXPECT_EQ(format_rfc3339(*parse_timestamp("2020-05-08T18:20:00+08:00")), "2020-05-08T10:20:00Z");
	EXPECT_EQ(format_rfc3339(*parse_timestamp("2020-01-01T00:30:00-01:30")), "2020-01-01T02:00:00Z");
}

TEST(Timestamp, RejectsMalformedInput)
{
	for (const char* s : { "", "not a date", "2020-13-01T00:00:00Z", "2020-02-30T00:00:00Z", "2020-01-01T25:00:00Z",
			 "2020-01-01", "2020-01-01T00:00:00+8" })
	{
		EXPECT_FALSE(parse_timestamp(s)) << s;
	}
}

TEST(Post, SourceAndGenderNames)
{
	EXPECT_EQ(to_string(SourceSite::weibo), "weibo");
	EXPECT_EQ(parse_source("dcard"), SourceSite::dcard);
	EXPECT_FALSE(parse_source("ptt"));
	EXPECT_EQ(parse_gender(to_string(Gender::female)), Gender::female);
}

TEST(Corpus, SourceCountsReconcile)
{
	Corpus c{ { Post{ .id = "1", .source = SourceSite::dcard }, Post{ .id = "2", .source = SourceSite::weibo },
		Post{ .id = "3", .source = SourceSite::weibo } } };
	EXPECT_EQ(c.source_count(SourceSite::dcard), 1u);
	EXPECT_EQ(c.source_count(SourceSite::weibo), 2u);
	EXPECT_EQ(c.source_count(SourceSite::dcard) + c.source_count(SourceSite::weibo), c.size());
}
