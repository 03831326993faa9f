#include <benchmark/benchmark.h>

#include <random>

#include <varcorp/linalg.hpp>
#include <varcorp/vectorspace.hpp>

#include "synthetic.hpp"

namespace
{
	std::vector<varcorp::PostRef> refs(std::size_t n)
	{
		std::vector<varcorp::PostRef> r;
		for (std::size_t i = 0; i < n; ++i) r.push_back({ std::to_string(i), varcorp::SourceSite::dcard });
		return r;
	}
}

static void thin_svd_square(benchmark::State& state)
{
	const auto n = static_cast<std::size_t>(state.range(0));
	std::mt19937_64 rng{ 3 };
	std::uniform_real_distribution<double> entry{ -1.0, 1.0 };
	varcorp::Matrix a(n, n);
	for (auto& v : a.data()) v = entry(rng);
	for (auto _ : state)
	{
		auto svd = varcorp::thin_svd(a);
		benchmark::DoNotOptimize(svd);
	}
}
BENCHMARK(thin_svd_square)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void fit_latent_space_pool(benchmark::State& state)
{
	const auto docs = bench::token_docs(static_cast<std::size_t>(state.range(0)));
	for (auto _ : state)
	{
		auto space = varcorp::fit_latent_space(docs, refs(docs.size()), 300);
		benchmark::DoNotOptimize(space);
	}
}
BENCHMARK(fit_latent_space_pool)->Arg(100)->Arg(600)->Unit(benchmark::kMillisecond);

static void rank_by_similarity_pool(benchmark::State& state)
{
	const auto docs = bench::token_docs(static_cast<std::size_t>(state.range(0)));
	const auto space = varcorp::fit_latent_space(docs, refs(docs.size()), 300);
	const auto query = space.embed(docs.front());
	for (auto _ : state)
	{
		auto ranked = varcorp::rank_by_similarity(query, space.index, 10);
		benchmark::DoNotOptimize(ranked);
	}
}
BENCHMARK(rank_by_similarity_pool)->Arg(100)->Arg(600);
