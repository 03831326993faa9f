#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <varcorp/align.hpp>
#include <varcorp/post.hpp>
#include <varcorp/segment.hpp>

namespace varcorp
{
	class PolarityLexicon
	{
	public:
		PolarityLexicon() = default;
		explicit PolarityLexicon(std::unordered_map<std::string, double, StringHash, std::equal_to<>> scores);

		/// 0 for tokens not in the lexicon.
		double score(std::string_view token) const;
		bool contains(std::string_view token) const { return scores_.find(token) != scores_.end(); }
		std::size_t size() const noexcept { return scores_.size(); }

	private:
		std::unordered_map<std::string, double, StringHash, std::equal_to<>> scores_;
	};

	/// "<token><TAB><signed decimal>" per line, '#' comments. Throws SchemaViolation.
	PolarityLexicon parse_lexicon(std::string_view text);
	PolarityLexicon load_lexicon(const std::filesystem::path& path);

	/// Mean lexicon score over the tokens; 0 for an empty list.
	double polarity(std::span<const std::string> tokens, const PolarityLexicon& lexicon);

	enum class PolarityMode
	{
		/// mean over posts of each post's mean token score
		per_post_mean,
		/// total score over total tokens of the whole pool
		pooled_tokens,
	};

	struct TagStats
	{
		SourceSite site = SourceSite::dcard;
		std::uint64_t total_posts = 0;
		std::uint64_t men = 0;
		std::uint64_t women = 0;
		std::uint64_t unknown_gender = 0;
		/// code points of cleaned text
		double avg_post_length = 0;
		double naive_polarity = 0;

		bool operator==(const TagStats&) const = default;
	};

	TagStats quick_stats(const TopicPool& pool, const PolarityLexicon& lexicon,
		PolarityMode mode = PolarityMode::per_post_mean);

	/// Optional exploration filter; the default keeps every token.
	struct TokenFilter
	{
		bool drop_punctuation = false;
		StringSet stoplist;

		bool active() const noexcept { return drop_punctuation || !stoplist.empty(); }
		bool keep(std::string_view token) const;
	};

	/// All tokens are punctuation code points.
	bool is_punctuation_token(std::string_view token);

	struct FrequencyList
	{
		SourceSite site = SourceSite::dcard;
		/// count descending, then token in code point order
		std::vector<std::pair<std::string, std::uint64_t>> entries;

		bool operator==(const FrequencyList&) const = default;
	};

	FrequencyList frequency_list(const TopicPool& pool, std::size_t top_n, const TokenFilter& filter = {});

	struct BigramStats
	{
		std::uint64_t total_tokens = 0;
		std::uint64_t total_bigrams = 0;
		std::map<std::string, std::uint64_t, std::less<>> unigrams;
		std::map<std::pair<std::string, std::string>, std::uint64_t> bigrams;
	};

	/// Adjacent pairs within each post only. Tokens removed by the filter break
	/// adjacency instead of joining their neighbours.
	BigramStats build_bigram_stats(const TokenLists& docs, const TokenFilter& filter = {});
	BigramStats build_bigram_stats(const TopicPool& pool, const TokenFilter& filter = {});

	struct CollocationRow
	{
		std::string first;
		std::string second;
		std::uint64_t count = 0;
		double pmi = 0;

		bool operator==(const CollocationRow&) const = default;
	};

	struct CollocationTable
	{
		std::string pivot;
		std::size_t min_count = 3;
		std::vector<CollocationRow> rows;

		bool operator==(const CollocationTable&) const = default;
	};

	/// Bigrams containing `pivot` on either side with count >= min_count, scored by
	/// log2((c(x,y)/B) / ((c(x)/T) (c(y)/T))), sorted by PMI descending and then by
	/// (first, second). Throws Error when min_count is 0.
	CollocationTable collocations(const BigramStats& stats, std::string_view pivot, std::size_t min_count,
		std::size_t top_n);

	struct CompareParams
	{
		/// empty means "use the tag"
		std::string pivot;
		std::size_t min_count = 3;
		std::size_t freq_top_n = 20;
		std::size_t colloc_top_n = 20;
		TokenFilter filter;
		PolarityMode polarity_mode = PolarityMode::per_post_mean;
	};

	struct SiteReport
	{
		TagStats stats;
		FrequencyList freq;
		CollocationTable colloc;

		bool operator==(const SiteReport&) const = default;
	};

	struct ComparisonReport
	{
		std::string tag;
		SiteReport dcard;
		SiteReport weibo;

		bool operator==(const ComparisonReport&) const = default;
	};

	ComparisonReport compare_sites(std::string_view tag, const TopicPool& dcard_pool, const TopicPool& weibo_pool,
		const PolarityLexicon& lexicon, const CompareParams& params);
}
