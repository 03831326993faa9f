#include <varcorp/segment.hpp>

#include <algorithm>
#include <exception>
#include <thread>

#include <varcorp/error.hpp>
#include <varcorp/ingest.hpp>
#include <varcorp/utf8.hpp>

#include "parallel.hpp"

namespace varcorp
{
	Dictionary::Dictionary(const std::vector<std::string>& words)
	{
		for (const auto& w : words)
		{
			if (w.empty()) continue;
			max_word_len_ = std::max(max_word_len_, utf8::length(w));
			entries_.insert(w);
		}
		if (entries_.empty()) throw EmptyDictionary("dictionary has no entries");
	}

	Dictionary parse_dictionary(std::string_view text)
	{
		std::vector<std::string> words;
		std::size_t pos = 0;
		while (pos < text.size())
		{
			auto eol = text.find('\n', pos);
			if (eol == std::string_view::npos) eol = text.size();
			auto line = utf8::trim(text.substr(pos, eol - pos));
			pos = eol + 1;
			// UTF-8 byte order mark on the first line
			if (line.starts_with("\xEF\xBB\xBF")) line = utf8::trim(line.substr(3));
			if (line.empty() || line.front() == '#') continue;
			std::size_t end = 0;
			while (end < line.size())
			{
				const auto cp = utf8::decode(line, end);
				if (utf8::is_space(cp.value)) break;
				end += cp.length;
			}
			words.emplace_back(line.substr(0, end));
		}
		return Dictionary{ words };
	}

	Dictionary load_dictionary(const std::filesystem::path& path)
	{
		try
		{
			return parse_dictionary(read_file(path));
		}
		catch (const EmptyDictionary&)
		{
			throw EmptyDictionary(path.string() + ": dictionary has no entries");
		}
	}

	std::vector<std::string> segment_fmm(std::string_view text, const Dictionary& dict)
	{
		std::vector<std::string> tokens;
		const auto bounds = utf8::boundaries(text);
		const std::size_t n = bounds.size() - 1;
		std::vector<char32_t> cps(n);
		for (std::size_t i = 0; i < n; ++i) cps[i] = utf8::decode(text, bounds[i]).value;

		std::size_t i = 0, seg_end = 0;
		while (i < n)
		{
			if (utf8::is_space(cps[i]))
			{
				++i;
				continue;
			}
			if (seg_end <= i)
			{
				seg_end = i;
				while (seg_end < n && !utf8::is_space(cps[seg_end])) ++seg_end;
			}

			bool matched = false;
			for (std::size_t len = std::min(dict.max_word_len(), seg_end - i); len >= 1; --len)
			{
				const auto word = text.substr(bounds[i], bounds[i + len] - bounds[i]);
				if (dict.contains(word))
				{
					tokens.emplace_back(word);
					i += len;
					matched = true;
					break;
				}
			}
			if (matched) continue;

			std::size_t j = i + 1;
			if (utf8::is_ascii_alnum(cps[i]))
			{
				while (j < seg_end && utf8::is_ascii_alnum(cps[j])) ++j;
			}
			tokens.emplace_back(text.substr(bounds[i], bounds[j] - bounds[i]));
			i = j;
		}
		return tokens;
	}

	FmmTokenizer::FmmTokenizer(std::shared_ptr<const Dictionary> dict) : dict_(std::move(dict))
	{
		if (!dict_ || dict_->empty()) throw EmptyDictionary("FMM tokenizer needs a non-empty dictionary");
	}

	std::vector<std::string> WhitespaceTokenizer::tokenize(std::string_view text) const
	{
		std::vector<std::string> tokens;
		std::size_t pos = 0, start = std::string_view::npos;
		while (pos < text.size())
		{
			const auto cp = utf8::decode(text, pos);
			if (utf8::is_space(cp.value))
			{
				if (start != std::string_view::npos) tokens.emplace_back(text.substr(start, pos - start));
				start = std::string_view::npos;
			}
			else if (start == std::string_view::npos)
			{
				start = pos;
			}
			pos += cp.length;
		}
		if (start != std::string_view::npos) tokens.emplace_back(text.substr(start));
		return tokens;
	}

	Corpus tokenize_corpus(Corpus corpus, const Tokenizer& tokenizer, unsigned threads)
	{
		auto& posts = corpus.posts();
		detail::parallel_for(posts.size(), threads, [&](std::size_t i)
		{
			posts[i].tokens = tokenizer.tokenize(posts[i].text);
		});
		return corpus;
	}

	Corpus tokenize_corpus(Corpus corpus, const std::map<SourceSite, const Tokenizer*>& by_source, unsigned threads)
	{
		auto& posts = corpus.posts();
		detail::parallel_for(posts.size(), threads, [&](std::size_t i)
		{
			const auto it = by_source.find(posts[i].source);
			if (it != by_source.end() && it->second) posts[i].tokens = it->second->tokenize(posts[i].text);
		});
		return corpus;
	}
}
