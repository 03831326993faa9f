#pragma once

#include <random>
#include <string>
#include <vector>

namespace bench
{
	inline const std::vector<std::string>& words()
	{
		static const std::vector<std::string> w{ "減肥", "健身", "運動", "好開心", "天氣", "早餐", "跑步", "游泳", "瑜珈", "教練",
			"高蛋白", "炸雞", "想吃", "今天", "真的", "好累", "加油", "體重", "熱量", "晚餐" };
		return w;
	}

	/// `count` documents of 5..40 tokens drawn from a Zipf-like mix of the word list
	/// plus rare terms, so the term-document matrix is sparse like real posts.
	inline std::vector<std::vector<std::string>> token_docs(std::size_t count, unsigned seed = 1)
	{
		std::mt19937_64 rng{ seed };
		std::uniform_int_distribution<std::size_t> len{ 5, 40 };
		std::geometric_distribution<std::size_t> common{ 0.2 };
		std::uniform_int_distribution<std::size_t> rare{ 0, 2000 };
		std::vector<std::vector<std::string>> docs(count);
		for (auto& d : docs)
		{
			for (std::size_t n = len(rng); n > 0; --n)
			{
				const auto i = common(rng);
				d.push_back(i < words().size() ? words()[i] : "r" + std::to_string(rare(rng)));
			}
		}
		return docs;
	}

	/// Words from the list run together without spaces until the text reaches `approx_bytes`.
	inline std::string cjk_text(std::size_t approx_bytes, unsigned seed = 2)
	{
		std::mt19937_64 rng{ seed };
		std::uniform_int_distribution<std::size_t> pick{ 0, words().size() - 1 };
		std::string s;
		while (s.size() < approx_bytes) s += words()[pick(rng)];
		return s;
	}
}
