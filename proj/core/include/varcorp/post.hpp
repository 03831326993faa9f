#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace varcorp
{
	enum class SourceSite : std::uint8_t
	{
		dcard,
		weibo,
	};

	inline constexpr std::array<SourceSite, 2> all_sources{ SourceSite::dcard, SourceSite::weibo };

	std::string_view to_string(SourceSite s) noexcept;
	std::optional<SourceSite> parse_source(std::string_view s) noexcept;

	enum class Gender : std::uint8_t
	{
		unknown,
		male,
		female,
	};

	std::string_view to_string(Gender g) noexcept;
	std::optional<Gender> parse_gender(std::string_view s) noexcept;

	using Timestamp = std::chrono::sys_seconds;

	/// RFC 3339 in UTC with seconds precision, e.g. "2019-03-01T04:05:06Z".
	std::string format_rfc3339(Timestamp t);

	/// Accepts "YYYY-MM-DD[T ]HH:MM:SS[.frac][Z|+HH:MM|-HH:MM]". A missing offset is
	/// read as `default_offset` (both sources publish local time in UTC+8).
	/// Fractional seconds are truncated.
	std::optional<Timestamp> parse_timestamp(std::string_view s,
		std::chrono::minutes default_offset = std::chrono::hours{ 8 });

	struct Post
	{
		std::string id;
		SourceSite source = SourceSite::dcard;
		std::string raw_text;
		std::string text;
		std::vector<std::string> tags;
		Gender gender = Gender::unknown;
		std::optional<Timestamp> created_at;
		std::optional<std::uint64_t> likes;
		std::optional<std::uint64_t> comments;
		std::optional<std::string> school;
		std::optional<std::string> department;
		std::optional<std::uint64_t> followers;
		std::optional<std::string> screen_name;
		std::vector<std::string> tokens;

		bool operator==(const Post&) const = default;
	};

	/// Posts in ingestion order. Source counts are derived, so they always reconcile.
	class Corpus
	{
	public:
		Corpus() = default;
		explicit Corpus(std::vector<Post> posts) : posts_(std::move(posts)) {}

		const std::vector<Post>& posts() const noexcept { return posts_; }
		std::vector<Post>& posts() noexcept { return posts_; }
		std::size_t size() const noexcept { return posts_.size(); }
		bool empty() const noexcept { return posts_.empty(); }

		std::size_t source_count(SourceSite s) const noexcept;

		bool operator==(const Corpus&) const = default;

	private:
		std::vector<Post> posts_;
	};
}
