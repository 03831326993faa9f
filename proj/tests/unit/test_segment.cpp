#include <gtest/gtest.h>

#include <random>
#include <set>

#include <varcorp/error.hpp>
#include <varcorp/ingest.hpp>
#include <varcorp/segment.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace varcorp;

namespace
{
	std::vector<std::string> fmm(std::string_view text, std::vector<std::string> words)
	{
		return segment_fmm(text, Dictionary{ words });
	}

	std::string concat(const std::vector<std::string>& tokens)
	{
		std::string s;
		for (const auto& t : tokens) s += t;
		return s;
	}

	std::string without_space(std::string_view text)
	{
		std::u32string kept;
		for (char32_t c : oracle::to_u32(text))
		{
			if (c != U' ' && c != U'\n' && c != U'\t' && c != 0x3000) kept.push_back(c);
		}
		return oracle::to_u8(kept);
	}
}

TEST(Dictionary, ParsesEntriesAndLength)
{
	const auto d = parse_dictionary("減肥\n運動\n");
	EXPECT_EQ(d.size(), 2u);
	EXPECT_TRUE(d.contains("減肥"));
	EXPECT_EQ(d.max_word_len(), 2u);
}

TEST(Dictionary, DuplicatesCollapse)
{
	EXPECT_EQ(parse_dictionary("減肥\n減肥\n").size(), 1u);
}

TEST(Dictionary, CommentsBomAndExtraColumns)
{
	const auto d = parse_dictionary("\xEF\xBB\xBF# comment\n健身房 10 n\r\n\n");
	EXPECT_EQ(d.size(), 1u);
	EXPECT_TRUE(d.contains("健身房"));
	EXPECT_EQ(d.max_word_len(), 3u);
}

TEST(Dictionary, EmptyIsAnError)
{
	EXPECT_THROW(parse_dictionary("# only a comment\n"), EmptyDictionary);
	EXPECT_THROW(Dictionary{ std::vector<std::string>{} }, EmptyDictionary);
	EXPECT_THROW(load_dictionary("/nonexistent/dict.txt"), IoError);
}

TEST(Fmm, LongestMatch)
{
	EXPECT_EQ(fmm("我想減肥", { "減肥" }), (std::vector<std::string>{ "我", "想", "減肥" }));
}

TEST(Fmm, CharacterFallback)
{
	EXPECT_EQ(fmm("減肥", { "健身" }), (std::vector<std::string>{ "減", "肥" }));
}

TEST(Fmm, LatinRunsStayWhole)
{
	const std::vector<std::string> words{ "瘦身", "好用" };
	const auto got = fmm("瘦身app真好用", words);
	EXPECT_EQ(got, (std::vector<std::string>{ "瘦身", "app", "真", "好用" }));
	EXPECT_EQ(got, oracle::longest_match("瘦身app真好用", { words.begin(), words.end() }));
}

TEST(Fmm, WhitespaceSeparatesAndIsDropped)
{
	EXPECT_EQ(fmm("減 肥　好", { "減肥" }), (std::vector<std::string>{ "減", "肥", "好" }));
	EXPECT_TRUE(fmm("", { "a" }).empty());
	EXPECT_TRUE(fmm("  \n", { "a" }).empty());
}

TEST(Fmm, DictionaryWinsOverLatinRun)
{
	EXPECT_EQ(fmm("ab1", { "ab" }), (std::vector<std::string>{ "ab", "1" }));
}

TEST(Fmm, MatchesBruteForceOracleOnRandomStrings)
{
	const std::u32string alphabet = U"減肥運動健身好累吃a1 ";
	std::mt19937 rng{ 2024 };
	for (int round = 0; round < 300; ++round)
	{
		std::set<std::string> words;
		const int n_words = 1 + static_cast<int>(rng() % 12);
		for (int w = 0; w < n_words; ++w)
		{
			std::u32string word;
			const int len = 1 + static_cast<int>(rng() % 4);
			for (int i = 0; i < len; ++i) word.push_back(alphabet[rng() % (alphabet.size() - 1)]);
			words.insert(oracle::to_u8(word));
		}
		std::u32string text;
		const int len = static_cast<int>(rng() % 30);
		for (int i = 0; i < len; ++i) text.push_back(alphabet[rng() % alphabet.size()]);
		const auto s = oracle::to_u8(text);
		const auto got = segment_fmm(s, Dictionary{ { words.begin(), words.end() } });
		ASSERT_EQ(got, oracle::longest_match(s, words)) << s;
		ASSERT_EQ(concat(got), without_space(s)) << s;
	}
}

TEST(Tokenizers, WhitespaceTokenizerSplitsOnAnySpace)
{
	EXPECT_EQ(WhitespaceTokenizer{}.tokenize(" 減肥  加油\n好　的 "), (std::vector<std::string>{ "減肥", "加油", "好", "的" }));
}

TEST(TokenizeCorpus, FillsTokensFromCleanedText)
{
	const FmmTokenizer tok{ std::make_shared<const Dictionary>(std::vector<std::string>{ "減肥" }) };
	Corpus c{ { Post{ .id = "1", .text = "我想減肥" }, Post{ .id = "2", .text = "好" }, Post{ .id = "3", .text = "" } } };
	const auto out = tokenize_corpus(c, tok);
	EXPECT_EQ(out.posts()[0].tokens, (std::vector<std::string>{ "我", "想", "減肥" }));
	EXPECT_EQ(out.posts()[1].tokens, std::vector<std::string>{ "好" });
	EXPECT_TRUE(out.posts()[2].tokens.empty());
}

TEST(TokenizeCorpus, FixtureTokensMatchOracle)
{
	const auto corpus = fixtures::corpus();
	const auto dcard_words = parse_dictionary(fixtures::read("dict_dcard.txt")).entries();
	const auto weibo_words = parse_dictionary(fixtures::read("dict_weibo.txt")).entries();
	const std::set<std::string> dcard{ dcard_words.begin(), dcard_words.end() };
	const std::set<std::string> weibo{ weibo_words.begin(), weibo_words.end() };
	ASSERT_EQ(corpus.size(), 13u);
	for (const auto& p : corpus.posts())
	{
		EXPECT_EQ(p.tokens, oracle::longest_match(p.text, p.source == SourceSite::dcard ? dcard : weibo)) << p.id;
	}
	EXPECT_EQ(corpus.posts()[0].tokens, (std::vector<std::string>{ "今天", "去", "健身房", "運動", "好開心" }));
}

TEST(TokenizeCorpus, ThreadCountDoesNotChangeOutput)
{
	const auto corpus = fixtures::corpus();
	const FmmTokenizer tok{ std::make_shared<const Dictionary>(load_dictionary(fixtures::path("dict_dcard.txt"))) };
	const auto one = tokenize_corpus(corpus, tok, 1);
	for (unsigned threads : { 2u, 3u, 8u, 64u }) EXPECT_EQ(tokenize_corpus(corpus, tok, threads), one);
}

TEST(TokenizeCorpus, SourcesWithoutTokenizerKeepTokens)
{
	Corpus c{ { Post{ .id = "1", .source = SourceSite::weibo, .text = "a b", .tokens = { "keep" } } } };
	const WhitespaceTokenizer ws;
	const auto out = tokenize_corpus(c, { { SourceSite::dcard, &ws } });
	EXPECT_EQ(out.posts()[0].tokens, std::vector<std::string>{ "keep" });
}
