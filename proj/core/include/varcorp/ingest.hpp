#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <varcorp/post.hpp>

namespace varcorp
{
	/// Deletes every maximal run that starts with "http://", "https://" or "www."
	/// (ASCII case-insensitive) and continues through non-space, non-CJK characters.
	/// A removed run and the whitespace around it (including whitespace between
	/// consecutive URLs) becomes one space, or nothing when it touches either end
	/// of the string or contained no whitespace at all.
	std::string strip_urls(std::string_view text);

	struct HashtagSplit
	{
		std::vector<std::string> tags;
		std::string cleaned;
	};

	/// Pairs '#' markers left to right. Inner text of each pair, trimmed, becomes a
	/// tag when non-empty; markers are dropped from `cleaned` but the inner text
	/// stays. An odd final marker is kept literally.
	HashtagSplit extract_hashtags(std::string_view text);

	/// Converts one Dcard export record into a Post. Throws MissingField when `id`
	/// or `content` is missing; an unparseable `createdAt` leaves created_at empty
	/// and appends a message to `warnings`.
	Post parse_dcard_record(const nlohmann::json& record, std::size_t index, std::vector<std::string>& warnings);
	Post parse_dcard_record(const nlohmann::json& record, std::size_t index = 0);

	struct Rejection
	{
		std::size_t index;
		std::string reason;
	};

	struct DcardBatch
	{
		std::vector<Post> posts;
		std::vector<Rejection> rejected;
		std::vector<std::string> warnings;
	};

	/// Parses either a JSON array of records or one JSON record per line.
	/// Record indices are 0-based positions in the array, or among non-blank lines.
	DcardBatch parse_dcard_export(std::string_view text);

	struct WeiboPage
	{
		std::vector<Post> posts;
		std::size_t skipped_blocks = 0;
		std::vector<std::string> diagnostics;
	};

	/// Extracts posts from a saved Weibo timeline page.
	///
	/// A post block is any element whose class list contains `post`. Its text is the
	/// content of a descendant with class `text` when present, otherwise the block's
	/// own content. Metadata comes from attributes on the block: data-id (or mid),
	/// data-gender, data-created-at, data-likes, data-comments, data-followers,
	/// data-screen-name. Blocks without an id are numbered `<id_prefix><n>`, n being
	/// the block's position in the page.
	///
	/// Unterminated markup yields no posts and a diagnostic. Blocks with no text
	/// region and no character data are skipped and counted.
	WeiboPage parse_weibo_page(std::string_view html, std::string_view id_prefix = "weibo-");

	/// Line-delimited JSON corpus file, one post per line.
	void write_corpus(const Corpus& corpus, std::ostream& out);
	void write_corpus(const Corpus& corpus, const std::filesystem::path& path);
	Corpus read_corpus(std::istream& in);
	Corpus read_corpus(const std::filesystem::path& path);

	nlohmann::ordered_json post_to_json(const Post& post);
	/// Throws SchemaViolation(line_no) for any type or field error.
	Post post_from_json(const nlohmann::json& record, std::size_t line_no);

	std::string read_file(const std::filesystem::path& path);
}
