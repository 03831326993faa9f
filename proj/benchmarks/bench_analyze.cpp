#include <benchmark/benchmark.h>

#include <varcorp/analyze.hpp>

#include "synthetic.hpp"

static void bigram_stats(benchmark::State& state)
{
	const auto docs = bench::token_docs(static_cast<std::size_t>(state.range(0)));
	for (auto _ : state)
	{
		auto stats = varcorp::build_bigram_stats(docs);
		benchmark::DoNotOptimize(stats);
	}
}
BENCHMARK(bigram_stats)->Arg(1000)->Unit(benchmark::kMillisecond);

static void collocations_for_pivot(benchmark::State& state)
{
	const auto stats = varcorp::build_bigram_stats(bench::token_docs(static_cast<std::size_t>(state.range(0))));
	for (auto _ : state)
	{
		auto table = varcorp::collocations(stats, "減肥", 3, 20);
		benchmark::DoNotOptimize(table);
	}
}
BENCHMARK(collocations_for_pivot)->Arg(1000);
