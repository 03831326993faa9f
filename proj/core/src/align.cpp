#include <varcorp/align.hpp>

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include <varcorp/ingest.hpp>
#include <varcorp/utf8.hpp>

#include "parallel.hpp"

namespace varcorp
{
	std::string TagNormalizer::operator()(std::string_view tag) const
	{
		const auto lowered = utf8::ascii_lower(utf8::trim(tag));
		if (script_map_.empty()) return lowered;
		std::string out;
		out.reserve(lowered.size());
		for (std::size_t pos = 0; pos < lowered.size();)
		{
			const auto cp = utf8::decode(lowered, pos);
			const auto it = script_map_.find(cp.value);
			if (it != script_map_.end()) utf8::append(out, it->second);
			else out.append(lowered, pos, cp.length);
			pos += cp.length;
		}
		return out;
	}

	std::map<char32_t, char32_t> parse_script_map(std::string_view text)
	{
		std::map<char32_t, char32_t> map;
		std::size_t pos = 0, line_no = 0;
		while (pos < text.size())
		{
			auto eol = text.find('\n', pos);
			if (eol == std::string_view::npos) eol = text.size();
			const auto line = utf8::trim(text.substr(pos, eol - pos));
			pos = eol + 1;
			++line_no;
			if (line.empty() || line.front() == '#') continue;

			const auto tab = line.find('\t');
			const auto from = tab == std::string_view::npos ? std::string_view{} : utf8::trim(line.substr(0, tab));
			const auto to = tab == std::string_view::npos ? std::string_view{} : utf8::trim(line.substr(tab + 1));
			if (from.empty() || to.empty() || utf8::length(from) != 1 || utf8::length(to) != 1)
			{
				throw SchemaViolation(line_no, "expected one character, a tab, and one character");
			}
			map[utf8::decode(from, 0).value] = utf8::decode(to, 0).value;
		}
		return map;
	}

	std::map<char32_t, char32_t> load_script_map(const std::filesystem::path& path)
	{
		try
		{
			return parse_script_map(read_file(path));
		}
		catch (const SchemaViolation& e)
		{
			throw SchemaViolation(e.line_no(), e.detail(), path.string());
		}
	}

	TokenLists TopicPool::token_lists() const
	{
		TokenLists out;
		out.reserve(posts.size());
		for (const auto& p : posts) out.push_back(p.tokens);
		return out;
	}

	std::vector<PostRef> TopicPool::refs() const
	{
		std::vector<PostRef> out;
		out.reserve(posts.size());
		for (const auto& p : posts) out.push_back({ p.id, p.source });
		return out;
	}

	TopicPool pool_by_tag(const Corpus& corpus, std::string_view tag, SourceSite source, const TagNormalizer& normalize)
	{
		TopicPool pool;
		pool.tag = normalize(tag);
		pool.source = source;
		for (const auto& post : corpus.posts())
		{
			if (post.source != source) continue;
			const bool match = std::any_of(post.tags.begin(), post.tags.end(),
				[&](const std::string& t) { return normalize(t) == pool.tag; });
			if (!match) continue;
			pool.posts.push_back(post);
			pool.post_ids.push_back(post.id);
		}
		return pool;
	}

	std::uint64_t SplitMix64::next() noexcept
	{
		std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
		z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
		z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
		return z ^ (z >> 31);
	}

	std::uint64_t SplitMix64::uniform(std::uint64_t n) noexcept
	{
		// Reject the low 2^64 mod n values so every residue is equally likely.
		const std::uint64_t threshold = (0 - n) % n;
		for (;;)
		{
			const auto x = next();
			if (x >= threshold) return x % n;
		}
	}

	LatentSpace fit_pool_space(const TopicPool& dcard_pool, std::size_t k)
	{
		return fit_latent_space(dcard_pool.token_lists(), dcard_pool.refs(), k);
	}

	AlignmentResult align_query(std::string_view tag, const TopicPool& dcard_pool, const TopicPool& weibo_pool,
		const LatentSpace& space, std::uint64_t seed, std::size_t top_n)
	{
		if (dcard_pool.empty()) throw EmptyPool(SourceSite::dcard);
		if (weibo_pool.empty()) throw EmptyPool(SourceSite::weibo);
		if (space.index.refs.size() != dcard_pool.size()) throw DimensionMismatch(dcard_pool.size(), space.index.refs.size());

		AlignmentResult result;
		result.tag = std::string{ tag };
		result.seed = seed;
		SplitMix64 rng{ seed };
		result.anchor = weibo_pool.posts[rng.uniform(weibo_pool.size())];

		const auto query = space.embed(result.anchor.tokens);
		for (const auto& r : rank_by_similarity(query, space.index, top_n))
		{
			result.ranked.push_back({ dcard_pool.posts[r.row], r.similarity });
		}
		result.model_info = { space.lsi.k, space.lsi.k_eff, dcard_pool.size(), weibo_pool.size(), space.warnings };
		return result;
	}

	std::vector<PairList> align_all(const TopicPool& weibo_pool, const LatentSpace& dcard_space, double threshold,
		std::size_t top_n, unsigned threads)
	{
		if (!(threshold >= -1.0 && threshold <= 1.0)) throw Error("similarity threshold must lie in [-1, 1]");
		std::vector<PairList> out(weibo_pool.size());
		detail::parallel_for(weibo_pool.size(), threads, [&](std::size_t i)
		{
			const auto& post = weibo_pool.posts[i];
			out[i].weibo_id = post.id;
			const auto query = dcard_space.embed(post.tokens);
			for (const auto& r : rank_by_similarity(query, dcard_space.index, dcard_space.index.refs.size()))
			{
				if (r.similarity < threshold || out[i].pairs.size() >= top_n) break;
				out[i].pairs.push_back({ dcard_space.index.refs[r.row].id, r.similarity });
			}
		});
		return out;
	}

	std::string format_similarity(double sim)
	{
		char buf[32];
		std::snprintf(buf, sizeof buf, "%.6f", sim);
		std::string s{ buf };
		if (s == "-0.000000") s = "0.000000";
		return s;
	}

	std::string format_alignment_batch(std::string_view tag, const std::vector<PairList>& lists)
	{
		const auto quote = [](std::string_view s) { return nlohmann::json(std::string{ s }).dump(); };
		std::string out;
		for (const auto& list : lists)
		{
			out += "{\"tag\":" + quote(tag) + ",\"weibo_id\":" + quote(list.weibo_id) + ",\"pairs\":[";
			for (std::size_t i = 0; i < list.pairs.size(); ++i)
			{
				if (i) out += ',';
				out += "{\"dcard_id\":" + quote(list.pairs[i].dcard_id) + ",\"sim\":" + format_similarity(list.pairs[i].similarity) + "}";
			}
			out += "]}\n";
		}
		return out;
	}
}
