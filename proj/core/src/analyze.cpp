#include <varcorp/analyze.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>

#include <varcorp/error.hpp>
#include <varcorp/ingest.hpp>
#include <varcorp/utf8.hpp>

namespace varcorp
{
	PolarityLexicon::PolarityLexicon(std::unordered_map<std::string, double, StringHash, std::equal_to<>> scores)
		: scores_(std::move(scores))
	{
		for (const auto& [token, score] : scores_)
		{
			if (token.empty() || !std::isfinite(score)) throw Error("lexicon entries need a token and a finite score");
		}
	}

	double PolarityLexicon::score(std::string_view token) const
	{
		const auto it = scores_.find(token);
		return it == scores_.end() ? 0.0 : it->second;
	}

	PolarityLexicon parse_lexicon(std::string_view text)
	{
		std::unordered_map<std::string, double, StringHash, std::equal_to<>> scores;
		std::size_t pos = 0, line_no = 0;
		while (pos < text.size())
		{
			auto eol = text.find('\n', pos);
			if (eol == std::string_view::npos) eol = text.size();
			auto line = text.substr(pos, eol - pos);
			pos = eol + 1;
			++line_no;
			if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
			if (utf8::trim(line).empty() || line.front() == '#') continue;

			const auto tab = line.find('\t');
			if (tab == std::string_view::npos) throw SchemaViolation(line_no, "expected token<TAB>score");
			const auto token = utf8::trim(line.substr(0, tab));
			auto number = utf8::trim(line.substr(tab + 1));
			if (!number.empty() && number.front() == '+') number.remove_prefix(1);
			double score = 0;
			const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), score);
			if (token.empty() || number.empty() || ec != std::errc{} || end != number.data() + number.size()
				|| !std::isfinite(score))
			{
				throw SchemaViolation(line_no, "expected token<TAB>score");
			}
			scores.insert_or_assign(std::string{ token }, score);
		}
		return PolarityLexicon{ std::move(scores) };
	}

	PolarityLexicon load_lexicon(const std::filesystem::path& path)
	{
		try
		{
			return parse_lexicon(read_file(path));
		}
		catch (const SchemaViolation& e)
		{
			throw SchemaViolation(e.line_no(), e.detail(), path.string());
		}
	}

	double polarity(std::span<const std::string> tokens, const PolarityLexicon& lexicon)
	{
		if (tokens.empty()) return 0.0;
		double sum = 0;
		for (const auto& t : tokens) sum += lexicon.score(t);
		return sum / static_cast<double>(tokens.size());
	}

	TagStats quick_stats(const TopicPool& pool, const PolarityLexicon& lexicon, PolarityMode mode)
	{
		TagStats s;
		s.site = pool.source;
		s.total_posts = pool.size();
		if (pool.empty()) return s;

		double length_sum = 0, polarity_sum = 0, score_sum = 0;
		std::uint64_t token_total = 0;
		for (const auto& p : pool.posts)
		{
			switch (p.gender)
			{
			case Gender::male: ++s.men; break;
			case Gender::female: ++s.women; break;
			default: ++s.unknown_gender; break;
			}
			length_sum += static_cast<double>(utf8::length(p.text));
			polarity_sum += polarity(p.tokens, lexicon);
			for (const auto& t : p.tokens) score_sum += lexicon.score(t);
			token_total += p.tokens.size();
		}
		const auto n = static_cast<double>(pool.size());
		s.avg_post_length = length_sum / n;
		if (mode == PolarityMode::per_post_mean) s.naive_polarity = polarity_sum / n;
		else s.naive_polarity = token_total ? score_sum / static_cast<double>(token_total) : 0.0;
		return s;
	}

	bool is_punctuation_token(std::string_view token)
	{
		if (token.empty()) return false;
		for (std::size_t pos = 0; pos < token.size();)
		{
			const auto cp = utf8::decode(token, pos);
			if (!utf8::is_punctuation(cp.value)) return false;
			pos += cp.length;
		}
		return true;
	}

	bool TokenFilter::keep(std::string_view token) const
	{
		if (drop_punctuation && is_punctuation_token(token)) return false;
		return stoplist.find(token) == stoplist.end();
	}

	FrequencyList frequency_list(const TopicPool& pool, std::size_t top_n, const TokenFilter& filter)
	{
		std::map<std::string, std::uint64_t, std::less<>> counts;
		for (const auto& p : pool.posts)
		{
			for (const auto& t : p.tokens)
			{
				if (filter.keep(t)) ++counts[t];
			}
		}
		FrequencyList list;
		list.site = pool.source;
		list.entries.assign(counts.begin(), counts.end());
		// map order already sorts ties by token; a stable sort on count keeps it
		std::stable_sort(list.entries.begin(), list.entries.end(),
			[](const auto& a, const auto& b) { return a.second > b.second; });
		if (list.entries.size() > top_n) list.entries.resize(top_n);
		return list;
	}

	BigramStats build_bigram_stats(const TokenLists& docs, const TokenFilter& filter)
	{
		BigramStats s;
		for (const auto& tokens : docs)
		{
			const std::string* prev = nullptr;
			for (const auto& t : tokens)
			{
				if (!filter.keep(t))
				{
					prev = nullptr;
					continue;
				}
				++s.total_tokens;
				++s.unigrams[t];
				if (prev)
				{
					++s.total_bigrams;
					++s.bigrams[{ *prev, t }];
				}
				prev = &t;
			}
		}
		return s;
	}

	BigramStats build_bigram_stats(const TopicPool& pool, const TokenFilter& filter)
	{
		return build_bigram_stats(pool.token_lists(), filter);
	}

	CollocationTable collocations(const BigramStats& stats, std::string_view pivot, std::size_t min_count,
		std::size_t top_n)
	{
		if (min_count == 0) throw Error("min_count must be at least 1");
		CollocationTable table;
		table.pivot = std::string{ pivot };
		table.min_count = min_count;
		if (!stats.unigrams.contains(pivot)) return table;

		const auto total_tokens = static_cast<double>(stats.total_tokens);
		const auto total_bigrams = static_cast<double>(stats.total_bigrams);
		for (const auto& [pair, count] : stats.bigrams)
		{
			if (count < min_count || (pair.first != pivot && pair.second != pivot)) continue;
			const auto px = static_cast<double>(stats.unigrams.find(pair.first)->second) / total_tokens;
			const auto py = static_cast<double>(stats.unigrams.find(pair.second)->second) / total_tokens;
			const auto pxy = static_cast<double>(count) / total_bigrams;
			table.rows.push_back({ pair.first, pair.second, count, std::log2(pxy / (px * py)) });
		}
		std::stable_sort(table.rows.begin(), table.rows.end(),
			[](const CollocationRow& a, const CollocationRow& b) { return a.pmi > b.pmi; });
		if (table.rows.size() > top_n) table.rows.resize(top_n);
		return table;
	}

	ComparisonReport compare_sites(std::string_view tag, const TopicPool& dcard_pool, const TopicPool& weibo_pool,
		const PolarityLexicon& lexicon, const CompareParams& params)
	{
		const std::string pivot = params.pivot.empty() ? std::string{ tag } : params.pivot;
		auto site = [&](const TopicPool& pool)
		{
			return SiteReport{
				quick_stats(pool, lexicon, params.polarity_mode),
				frequency_list(pool, params.freq_top_n, params.filter),
				collocations(build_bigram_stats(pool, params.filter), pivot, params.min_count, params.colloc_top_n),
			};
		};
		return { std::string{ tag }, site(dcard_pool), site(weibo_pool) };
	}
}
