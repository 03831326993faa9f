#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <varcorp/post.hpp>

namespace varcorp
{
	struct StringHash
	{
		using is_transparent = void;
		std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
	};

	using StringSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

	class Dictionary
	{
	public:
		Dictionary() = default;
		/// Throws EmptyDictionary when no non-empty word remains.
		explicit Dictionary(const std::vector<std::string>& words);

		bool contains(std::string_view word) const { return entries_.find(word) != entries_.end(); }
		std::size_t size() const noexcept { return entries_.size(); }
		bool empty() const noexcept { return entries_.empty(); }
		/// Longest entry in code points.
		std::size_t max_word_len() const noexcept { return max_word_len_; }
		const StringSet& entries() const noexcept { return entries_; }

	private:
		StringSet entries_;
		std::size_t max_word_len_ = 0;
	};

	/// One word per line; anything after the first whitespace (a frequency column) is
	/// ignored and lines starting with '#' are comments.
	Dictionary parse_dictionary(std::string_view text);
	Dictionary load_dictionary(const std::filesystem::path& path);

	/// Segmentation strategy. Implementations must partition the non-whitespace
	/// characters of the input: joining the tokens gives the input minus whitespace.
	class Tokenizer
	{
	public:
		virtual ~Tokenizer() = default;
		virtual std::vector<std::string> tokenize(std::string_view text) const = 0;
		virtual std::string name() const = 0;
	};

	/// Forward maximum matching over a dictionary, falling back to a whole ASCII
	/// letter/digit run or a single character when no entry matches.
	std::vector<std::string> segment_fmm(std::string_view text, const Dictionary& dict);

	class FmmTokenizer final : public Tokenizer
	{
	public:
		explicit FmmTokenizer(std::shared_ptr<const Dictionary> dict);

		std::vector<std::string> tokenize(std::string_view text) const override { return segment_fmm(text, *dict_); }
		std::string name() const override { return "fmm"; }

	private:
		std::shared_ptr<const Dictionary> dict_;
	};

	/// Splits on whitespace only; for text already segmented by an external tool.
	class WhitespaceTokenizer final : public Tokenizer
	{
	public:
		std::vector<std::string> tokenize(std::string_view text) const override;
		std::string name() const override { return "whitespace"; }
	};

	/// Replaces every post's tokens with the tokenization of its cleaned text.
	/// Posts are split across `threads` workers; output does not depend on the count.
	Corpus tokenize_corpus(Corpus corpus, const Tokenizer& tokenizer, unsigned threads = 1);

	/// Same, choosing the tokenizer by post source. Posts whose source has no
	/// tokenizer keep their existing tokens.
	Corpus tokenize_corpus(Corpus corpus, const std::map<SourceSite, const Tokenizer*>& by_source, unsigned threads = 1);
}
