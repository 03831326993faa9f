#include <benchmark/benchmark.h>

#include <varcorp/segment.hpp>

#include "synthetic.hpp"

static void segment_fmm_text(benchmark::State& state)
{
	const varcorp::Dictionary dict{ bench::words() };
	const auto text = bench::cjk_text(static_cast<std::size_t>(state.range(0)));
	for (auto _ : state)
	{
		auto tokens = varcorp::segment_fmm(text, dict);
		benchmark::DoNotOptimize(tokens);
	}
	state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(segment_fmm_text)->Arg(1 << 10)->Arg(1 << 16);

static void tokenize_corpus_threads(benchmark::State& state)
{
	const auto dict = std::make_shared<const varcorp::Dictionary>(bench::words());
	const varcorp::FmmTokenizer tokenizer{ dict };
	std::vector<varcorp::Post> posts(2000);
	for (std::size_t i = 0; i < posts.size(); ++i)
	{
		posts[i].id = std::to_string(i);
		posts[i].text = bench::cjk_text(300, static_cast<unsigned>(i));
	}
	const varcorp::Corpus corpus{ posts };
	for (auto _ : state)
	{
		auto out = varcorp::tokenize_corpus(corpus, tokenizer, static_cast<unsigned>(state.range(0)));
		benchmark::DoNotOptimize(out);
	}
}
BENCHMARK(tokenize_corpus_threads)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
