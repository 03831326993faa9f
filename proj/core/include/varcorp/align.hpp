#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <varcorp/error.hpp>
#include <varcorp/post.hpp>
#include <varcorp/vectorspace.hpp>

namespace varcorp
{
	/// Tag normalisation: trim, ASCII case-fold, then an optional per-character mapping
	/// (for bridging simplified and traditional spellings of the same tag).
	class TagNormalizer
	{
	public:
		TagNormalizer() = default;
		explicit TagNormalizer(std::map<char32_t, char32_t> script_map) : script_map_(std::move(script_map)) {}

		std::string operator()(std::string_view tag) const;

	private:
		std::map<char32_t, char32_t> script_map_;
	};

	/// Lines of "<from><TAB><to>", one character each side; '#' starts a comment.
	std::map<char32_t, char32_t> parse_script_map(std::string_view text);
	std::map<char32_t, char32_t> load_script_map(const std::filesystem::path& path);

	struct TopicPool
	{
		std::string tag;
		SourceSite source = SourceSite::dcard;
		std::vector<Post> posts;
		std::vector<std::string> post_ids;

		std::size_t size() const noexcept { return posts.size(); }
		bool empty() const noexcept { return posts.empty(); }
		TokenLists token_lists() const;
		std::vector<PostRef> refs() const;
	};

	/// Posts of `source` whose normalised tags contain the normalised `tag`, in corpus order.
	TopicPool pool_by_tag(const Corpus& corpus, std::string_view tag, SourceSite source,
		const TagNormalizer& normalize = {});

	/// SplitMix64 (Steele, Lea and Flood). state += 0x9E3779B97F4A7C15, then the
	/// output is mixed with the shifts 30/27/31 and multipliers 0xBF58476D1CE4E5B9
	/// and 0x94D049BB133111EB.
	class SplitMix64
	{
	public:
		explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

		std::uint64_t next() noexcept;

		/// Unbiased draw from [0, n) by rejection; n must be positive.
		std::uint64_t uniform(std::uint64_t n) noexcept;

	private:
		std::uint64_t state_;
	};

	class EmptyPool : public Error
	{
	public:
		explicit EmptyPool(SourceSite side)
			: Error(std::string{ "no " } + std::string{ to_string(side) } + " posts carry the requested tag"), side_(side)
		{
		}

		SourceSite side() const noexcept { return side_; }

	private:
		SourceSite side_;
	};

	struct ModelInfo
	{
		std::size_t k = 0;
		std::size_t k_eff = 0;
		std::size_t dcard_pool_size = 0;
		std::size_t weibo_pool_size = 0;
		std::vector<std::string> warnings;

		bool operator==(const ModelInfo&) const = default;
	};

	struct ScoredPost
	{
		Post post;
		double similarity;

		bool operator==(const ScoredPost&) const = default;
	};

	struct AlignmentResult
	{
		std::string tag;
		Post anchor;
		std::vector<ScoredPost> ranked;
		ModelInfo model_info;
		std::uint64_t seed = 0;

		bool operator==(const AlignmentResult&) const = default;
	};

	/// Fits tf-idf and LSI on the Dcard pool; Weibo posts are projected through it.
	LatentSpace fit_pool_space(const TopicPool& dcard_pool, std::size_t k = 300);

	/// Picks the Weibo anchor with SplitMix64(seed).uniform(pool size) and ranks the
	/// Dcard pool against it. Throws EmptyPool naming the empty side.
	AlignmentResult align_query(std::string_view tag, const TopicPool& dcard_pool, const TopicPool& weibo_pool,
		const LatentSpace& space, std::uint64_t seed, std::size_t top_n);

	struct PairScore
	{
		std::string dcard_id;
		double similarity;

		bool operator==(const PairScore&) const = default;
	};

	struct PairList
	{
		std::string weibo_id;
		std::vector<PairScore> pairs;

		bool operator==(const PairList&) const = default;
	};

	/// For every Weibo post, its top_n Dcard posts with similarity >= threshold.
	/// Throws Error when threshold is outside [-1, 1].
	std::vector<PairList> align_all(const TopicPool& weibo_pool, const LatentSpace& dcard_space, double threshold,
		std::size_t top_n, unsigned threads = 1);

	/// One JSON record per Weibo post: {"tag","weibo_id","pairs":[{"dcard_id","sim"}]},
	/// similarities with six decimals.
	std::string format_alignment_batch(std::string_view tag, const std::vector<PairList>& lists);

	/// "%.6f", with negative zero printed as 0.000000.
	std::string format_similarity(double sim);
}
