#include <gtest/gtest.h>

#include <random>

#include <json.hpp>

#include <varcorp/error.hpp>
#include <varcorp/ingest.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace varcorp;

TEST(StripUrls, SpecExamples)
{
	EXPECT_EQ(strip_urls("看這個 https://t.cn/AbC123 超讚"), "看這個 超讚");
	EXPECT_EQ(strip_urls(""), "");
	EXPECT_EQ(strip_urls("www.dcard.tw好站"), "好站");
}

TEST(StripUrls, MatchesRegexOracleOnHandPickedCases)
{
	const std::vector<std::string> cases{
		"看這個 https://t.cn/AbC123 超讚",
		"www.dcard.tw好站",
		"",
		"沒有網址",
		"https://a.b",
		"  http://x.y/z  ",
		"前https://a.b後",
		"A HTTPS://EXAMPLE.COM/X b",
		"Www.Example.com/path?q=1 後面",
		"連續 http://a.b http://c.d 兩個",
		"連續http://a.bhttp://c.d兩個",
		"結尾 http://a.b/c",
		"http://a.b 開頭",
		"全形空白　https://t.cn/x　後面",
		"不換行 https://t.cn/x 後",
		"多行\nhttp://a.b\n下一行",
		"tab\thttp://a.b\tend",
		"網址後接中文https://t.cn/x中文",
		"httpfoo 不是網址 wwwfoo",
		"ftp://a.b 不處理",
	};
	ASSERT_EQ(cases.size(), 20u);
	for (const auto& c : cases) EXPECT_EQ(strip_urls(c), oracle::strip_urls(c)) << c;
}

TEST(StripUrls, MatchesRegexOracleOnRandomText)
{
	const std::vector<std::string> pieces{ "減肥", "好", "app", " ", "  ", "\n", "　", "https://", "http://", "www.",
		"t.cn/Ab1", "/", "?q=1", "#", "HTTP://", "x" };
	std::mt19937 rng{ 7 };
	for (int i = 0; i < 500; ++i)
	{
		std::string s;
		const int n = static_cast<int>(rng() % 10);
		for (int k = 0; k < n; ++k) s += pieces[rng() % pieces.size()];
		ASSERT_EQ(strip_urls(s), oracle::strip_urls(s)) << s;
	}
}

TEST(Hashtags, SpecExamples)
{
	const auto a = extract_hashtags("今天#減肥#加油");
	EXPECT_EQ(a.tags, std::vector<std::string>{ "減肥" });
	EXPECT_EQ(a.cleaned, "今天減肥加油");

	const auto b = extract_hashtags("#a#b#c#");
	EXPECT_EQ(b.tags, (std::vector<std::string>{ "a", "c" }));
	EXPECT_EQ(b.cleaned, "abc");

	const auto c = extract_hashtags("no tags here");
	EXPECT_TRUE(c.tags.empty());
	EXPECT_EQ(c.cleaned, "no tags here");
}

TEST(Hashtags, OddMarkerIsKeptAndEmptyPairsYieldNoTag)
{
	const auto h = extract_hashtags("x#a#y#z");
	EXPECT_EQ(h.tags, std::vector<std::string>{ "a" });
	EXPECT_EQ(h.cleaned, "xay#z");
	EXPECT_TRUE(extract_hashtags("##").tags.empty());
	EXPECT_EQ(extract_hashtags("# 減肥 #").tags, std::vector<std::string>{ "減肥" });
}

TEST(Hashtags, AllMarkerPlacementsOnFourSlots)
{
	// slots before a, b, c and after c
	const std::string letters = "abc";
	for (unsigned mask = 0; mask < 16; ++mask)
	{
		std::string s;
		for (int slot = 0; slot < 4; ++slot)
		{
			if (mask & (1u << slot)) s += '#';
			if (slot < 3) s += letters[static_cast<std::size_t>(slot)];
		}
		const auto got = extract_hashtags(s);
		const auto want = oracle::extract_hashtags(s);
		EXPECT_EQ(got.tags, want.tags) << s;
		EXPECT_EQ(got.cleaned, want.cleaned) << s;
	}
}

TEST(Hashtags, MatchesSplitOracleOnRandomText)
{
	const std::vector<std::string> pieces{ "#", "減肥", " ", "a", "健身", "##", "　" };
	std::mt19937 rng{ 11 };
	for (int i = 0; i < 500; ++i)
	{
		std::string s;
		const int n = static_cast<int>(rng() % 12);
		for (int k = 0; k < n; ++k) s += pieces[rng() % pieces.size()];
		const auto got = extract_hashtags(s);
		const auto want = oracle::extract_hashtags(s);
		ASSERT_EQ(got.tags, want.tags) << s;
		ASSERT_EQ(got.cleaned, want.cleaned) << s;
	}
}

TEST(DcardRecord, DirectFieldMapping)
{
	const auto post = parse_dcard_record(nlohmann::json::parse(
		R"({"id":"1","content":"運動 https://x.co/a","tags":["健身"],"gender":"M"})"));
	EXPECT_EQ(post.id, "1");
	EXPECT_EQ(post.source, SourceSite::dcard);
	EXPECT_EQ(post.text, "運動");
	EXPECT_EQ(post.raw_text, "運動 https://x.co/a");
	EXPECT_EQ(post.tags, std::vector<std::string>{ "健身" });
	EXPECT_EQ(post.gender, Gender::male);
}

TEST(DcardRecord, MinimalRecord)
{
	const auto post = parse_dcard_record(nlohmann::json::parse(R"({"id":"2","content":"hi","tags":[]})"));
	EXPECT_TRUE(post.tags.empty());
	EXPECT_EQ(post.gender, Gender::unknown);
	EXPECT_FALSE(post.created_at);
}

TEST(DcardRecord, MissingFieldsThrowWithIndex)
{
	try
	{
		parse_dcard_record(nlohmann::json::parse(R"({"id":"3"})"), 4);
		FAIL() << "expected MissingField";
	}
	catch (const MissingField& e)
	{
		EXPECT_EQ(e.field(), "content");
		EXPECT_EQ(e.index(), 4u);
	}
	EXPECT_THROW(parse_dcard_record(nlohmann::json::parse(R"({"content":"x"})")), MissingField);
}

TEST(DcardRecord, MalformedTimestampIsDroppedWithWarning)
{
	std::vector<std::string> warnings;
	const auto post = parse_dcard_record(
		nlohmann::json::parse(R"({"id":"9","content":"x","createdAt":"yesterday"})"), 0, warnings);
	EXPECT_FALSE(post.created_at);
	EXPECT_EQ(warnings.size(), 1u);
}

TEST(DcardExport, FixtureYieldsEightPostsAndTwoRejections)
{
	const auto batch = parse_dcard_export(fixtures::read("dcard_export.json"));
	ASSERT_EQ(batch.posts.size(), 8u);
	ASSERT_EQ(batch.rejected.size(), 2u);
	EXPECT_EQ(batch.rejected[0].index, 3u);
	EXPECT_EQ(batch.rejected[1].index, 6u);
	EXPECT_EQ(batch.warnings.size(), 1u);

	const auto& first = batch.posts[0];
	EXPECT_EQ(first.text, "今天去健身房運動 好開心");
	EXPECT_EQ(first.school, "國立臺灣大學");
	EXPECT_EQ(first.likes, 12u);
	EXPECT_EQ(format_rfc3339(*first.created_at), "2020-05-01T10:00:00Z");

	EXPECT_EQ(batch.posts[1].text, "減肥好難 每天都想吃宵夜");
	EXPECT_EQ(batch.posts[2].text, "減肥要多運動 少吃 加油");
	EXPECT_EQ(batch.posts[4].tags, std::vector<std::string>{ "減肥" });
	EXPECT_EQ(batch.posts[7].id, "110");
	EXPECT_EQ(format_rfc3339(*batch.posts[7].created_at), "2020-05-08T10:20:00Z");
}

TEST(DcardExport, JsonLinesAndEmptyInput)
{
	const auto batch = parse_dcard_export("{\"id\":\"1\",\"content\":\"a\"}\n\n{\"id\":\"2\"}\n{broken\n");
	EXPECT_EQ(batch.posts.size(), 1u);
	ASSERT_EQ(batch.rejected.size(), 2u);
	EXPECT_EQ(batch.rejected[0].index, 1u);
	EXPECT_EQ(batch.rejected[1].index, 2u);

	const auto empty = parse_dcard_export("");
	EXPECT_TRUE(empty.posts.empty());
	EXPECT_TRUE(empty.rejected.empty());
}

TEST(WeiboPage, SingleBlock)
{
	const auto page = parse_weibo_page("<div class='post'>今天#健身#打卡</div>");
	ASSERT_EQ(page.posts.size(), 1u);
	EXPECT_EQ(page.posts[0].text, "今天健身打卡");
	EXPECT_EQ(page.posts[0].tags, std::vector<std::string>{ "健身" });
	EXPECT_EQ(page.posts[0].source, SourceSite::weibo);
	EXPECT_EQ(page.posts[0].id, "weibo-0");
}

TEST(WeiboPage, DecodesEntities)
{
	const auto page = parse_weibo_page("<div class=\"post\"><p class=\"text\">&lt;3 減肥</p></div>");
	ASSERT_EQ(page.posts.size(), 1u);
	EXPECT_EQ(page.posts[0].text, "<3 減肥");
}

TEST(WeiboPage, FixturePageHasFivePostsOneEmpty)
{
	const auto page = parse_weibo_page(fixtures::read("weibo_page.html"));
	ASSERT_EQ(page.posts.size(), 5u);
	EXPECT_EQ(page.skipped_blocks, 0u);
	EXPECT_TRUE(page.diagnostics.empty());

	const auto& w1 = page.posts[0];
	EXPECT_EQ(w1.id, "w1");
	EXPECT_EQ(w1.text, "今天減肥第一天 好累");
	EXPECT_EQ(w1.tags, std::vector<std::string>{ "減肥" });
	EXPECT_EQ(w1.gender, Gender::female);
	EXPECT_EQ(w1.followers, 300u);
	EXPECT_EQ(w1.screen_name, "小雨");
	EXPECT_EQ(format_rfc3339(*w1.created_at), "2020-06-01T01:00:00Z");

	EXPECT_EQ(page.posts[2].text, "減肥失败 想吃炸鸡&薯条 //@小明:加油");
	EXPECT_EQ(page.posts[3].text, "");
	EXPECT_TRUE(page.posts[3].tags.empty());
	EXPECT_EQ(page.posts[4].text, "健身教练 很好\n运动");
	EXPECT_EQ(page.posts[4].gender, Gender::male);
}

TEST(WeiboPage, UnterminatedMarkupGivesDiagnosticAndNoPosts)
{
	for (const char* html : { "<div class='post'>abc", "<div class='post'>abc</div><p class='x", "<!-- open" })
	{
		const auto page = parse_weibo_page(html);
		EXPECT_TRUE(page.posts.empty()) << html;
		EXPECT_FALSE(page.diagnostics.empty()) << html;
	}
}

TEST(WeiboPage, EmptyBlockIsSkippedAndCounted)
{
	const auto page = parse_weibo_page("<div class='post'></div><div class='post'>好</div>");
	ASSERT_EQ(page.posts.size(), 1u);
	EXPECT_EQ(page.skipped_blocks, 1u);
	EXPECT_EQ(page.posts[0].id, "weibo-1");
}
