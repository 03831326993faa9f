#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include <varcorp/error.hpp>
#include <varcorp/vectorspace.hpp>

#include "oracles.hpp"

using namespace varcorp;

namespace
{
	TokenLists random_docs(std::mt19937& rng, std::size_t n_docs, std::size_t vocab, std::size_t max_len)
	{
		TokenLists docs(n_docs);
		for (auto& d : docs)
		{
			const auto len = 1 + rng() % max_len;
			for (std::size_t i = 0; i < len; ++i) d.push_back("t" + std::to_string(rng() % vocab));
		}
		return docs;
	}

	std::vector<BowVector> bows(const TokenLists& docs, const Vocabulary& vocab)
	{
		std::vector<BowVector> out;
		for (const auto& d : docs) out.push_back(to_bow(d, vocab));
		return out;
	}

	std::vector<double> densify(const SparseVector& v, std::size_t n)
	{
		std::vector<double> out(n, 0.0);
		for (const auto& [id, w] : v) out[id] = w;
		return out;
	}
}

TEST(Vocabulary, FirstAppearanceOrder)
{
	const auto v = build_vocabulary({ { "a", "b" }, { "b", "c" } });
	EXPECT_EQ(v.size(), 3u);
	EXPECT_EQ(v.find("a"), 0u);
	EXPECT_EQ(v.find("b"), 1u);
	EXPECT_EQ(v.find("c"), 2u);
	EXPECT_FALSE(v.find("z"));
	EXPECT_EQ(build_vocabulary({ { "a", "a" } }).size(), 1u);
}

TEST(Vocabulary, SizeEqualsDistinctTokens)
{
	std::mt19937 rng{ 3 };
	const auto docs = random_docs(rng, 100, 400, 20);
	std::set<std::string> distinct;
	for (const auto& d : docs) distinct.insert(d.begin(), d.end());
	EXPECT_EQ(build_vocabulary(docs).size(), distinct.size());
}

TEST(Vocabulary, AllEmptyIsAnError)
{
	EXPECT_THROW(build_vocabulary({ {}, {} }), EmptyCorpus);
	EXPECT_THROW(build_vocabulary({}), EmptyCorpus);
}

TEST(Bow, CountsSortedByIdAndDropsOov)
{
	const auto v = build_vocabulary({ { "a", "b" } });
	EXPECT_EQ(to_bow(std::vector<std::string>{ "b", "z", "a", "b" }, v), (BowVector{ { 0, 1 }, { 1, 2 } }));
}

TEST(TfIdf, TwoDocumentCorpus)
{
	const TokenLists docs{ { "a", "b" }, { "a", "c" } };
	const auto vocab = build_vocabulary(docs);
	const auto model = fit_tfidf(bows(docs, vocab), vocab);
	EXPECT_EQ(model.idf[0], 0.0);
	EXPECT_EQ(model.idf[1], 1.0);
	EXPECT_EQ(model.idf[2], 1.0);
	const auto x = transform_tfidf(to_bow(std::vector<std::string>{ "a", "b" }, vocab), model);
	ASSERT_EQ(x.size(), 1u);
	EXPECT_EQ(x[0].first, 1u);
	EXPECT_NEAR(x[0].second, 1.0, 1e-12);
}

TEST(TfIdf, OovOnlyDocumentIsZero)
{
	const TokenLists docs{ { "a", "b" }, { "a", "c" } };
	const auto vocab = build_vocabulary(docs);
	const auto model = fit_tfidf(bows(docs, vocab), vocab);
	EXPECT_TRUE(transform_tfidf(to_bow(std::vector<std::string>{ "q" }, vocab), model).empty());
}

TEST(TfIdf, MatchesDenseOracle)
{
	std::mt19937 rng{ 17 };
	for (int round = 0; round < 50; ++round)
	{
		const auto docs = random_docs(rng, 2 + rng() % 15, 12, 10);
		const auto vocab = build_vocabulary(docs);
		const auto model = fit_tfidf(bows(docs, vocab), vocab);
		const auto want = oracle::tfidf(docs);
		ASSERT_EQ(vocab.terms(), want.terms);
		for (std::size_t i = 0; i < want.idf.size(); ++i) ASSERT_NEAR(model.idf[i], want.idf[i], 1e-12);
		for (std::size_t d = 0; d < docs.size(); ++d)
		{
			const auto got = densify(transform_tfidf(to_bow(docs[d], vocab), model), vocab.size());
			for (std::size_t i = 0; i < got.size(); ++i) ASSERT_NEAR(got[i], want.matrix[i][d], 1e-12);
		}
	}
}

TEST(Lsi, IdentityKeepsTwoBasisVectors)
{
	const auto lsi = fit_lsi({ { { 0, 1.0 } }, { { 1, 1.0 } }, { { 2, 1.0 } } }, 3, 2);
	EXPECT_EQ(lsi.k_eff, 2u);
	EXPECT_EQ(lsi.sigma, (std::vector<double>{ 1, 1 }));
	for (std::size_t c = 0; c < 2; ++c)
	{
		int ones = 0;
		for (std::size_t r = 0; r < 3; ++r)
		{
			if (lsi.u(r, c) == 1.0) ++ones;
			else EXPECT_EQ(lsi.u(r, c), 0.0);
		}
		EXPECT_EQ(ones, 1);
	}
}

TEST(Lsi, DiagonalSingularValues)
{
	const auto lsi = fit_lsi({ { { 0, 3.0 } }, { { 1, 2.0 } }, { { 2, 1.0 } } }, 3, 2);
	EXPECT_EQ(lsi.sigma, (std::vector<double>{ 3, 2 }));
}

TEST(Lsi, KEffIsCappedByRank)
{
	// two identical columns and one other: rank 2
	const auto lsi = fit_lsi({ { { 0, 0.6 }, { 1, 0.8 } }, { { 0, 0.6 }, { 1, 0.8 } }, { { 2, 1.0 } } }, 3, 300);
	EXPECT_EQ(lsi.k, 300u);
	EXPECT_EQ(lsi.k_eff, 2u);
	EXPECT_EQ(lsi.u.cols(), 2u);
}

TEST(Lsi, ZeroMatrixIsDegenerate)
{
	EXPECT_THROW(fit_lsi({ {}, {} }, 3, 2), DegenerateMatrix);
}

TEST(Lsi, SignsAreCanonical)
{
	std::mt19937 rng{ 23 };
	const auto docs = random_docs(rng, 12, 20, 8);
	const auto vocab = build_vocabulary(docs);
	const auto model = fit_tfidf(bows(docs, vocab), vocab);
	std::vector<SparseVector> cols;
	for (const auto& d : docs) cols.push_back(transform_tfidf(to_bow(d, vocab), model));
	const auto lsi = fit_lsi(cols, vocab.size(), 5);
	for (std::size_t c = 0; c < lsi.k_eff; ++c)
	{
		std::size_t best = 0;
		for (std::size_t r = 1; r < lsi.u.rows(); ++r)
		{
			if (std::abs(lsi.u(r, c)) > std::abs(lsi.u(best, c))) best = r;
		}
		EXPECT_GT(lsi.u(best, c), 0.0);
	}
}

TEST(Projection, BasisColumnMapsToUnitVector)
{
	std::mt19937 rng{ 4 };
	const auto docs = random_docs(rng, 10, 15, 8);
	const auto vocab = build_vocabulary(docs);
	const auto model = fit_tfidf(bows(docs, vocab), vocab);
	std::vector<SparseVector> cols;
	for (const auto& d : docs) cols.push_back(transform_tfidf(to_bow(d, vocab), model));
	const auto lsi = fit_lsi(cols, vocab.size(), 4);
	for (std::size_t i = 0; i < lsi.k_eff; ++i)
	{
		std::vector<double> column(vocab.size());
		for (std::size_t r = 0; r < vocab.size(); ++r) column[r] = lsi.u(r, i);
		const auto e = project_lsi(column, lsi);
		for (std::size_t j = 0; j < e.size(); ++j) EXPECT_NEAR(e[j], i == j ? 1.0 : 0.0, 1e-12);
	}
	const auto zero = project_lsi(SparseVector{}, lsi);
	EXPECT_EQ(zero, std::vector<double>(lsi.k_eff, 0.0));
	EXPECT_THROW(project_lsi(std::vector<double>(vocab.size() + 1), lsi), DimensionMismatch);
	EXPECT_THROW(project_lsi(SparseVector{ { static_cast<TermId>(vocab.size()), 1.0 } }, lsi), DimensionMismatch);

	// sparse path against the dense multiply oracle
	for (const auto& c : cols)
	{
		const auto got = project_lsi(c, lsi);
		const auto want = oracle::transpose_times(lsi.u, densify(c, vocab.size()));
		for (std::size_t j = 0; j < got.size(); ++j) EXPECT_NEAR(got[j], want[j], 1e-12);
	}
}

TEST(Cosine, HandValues)
{
	EXPECT_EQ(cosine(std::vector<double>{ 0.3, 0.4 }, std::vector<double>{ 0.3, 0.4 }), 1.0);
	EXPECT_EQ(cosine(std::vector<double>{ 1, 0 }, std::vector<double>{ 0, 1 }), 0.0);
	EXPECT_NEAR(cosine(std::vector<double>{ 1, 0 }, std::vector<double>{ 1, 1 }), 0.70710678, 1e-8);
	EXPECT_EQ(cosine(std::vector<double>{ 0, 0 }, std::vector<double>{ 1, 1 }), 0.0);
	EXPECT_THROW(cosine(std::vector<double>{ 1 }, std::vector<double>{ 1, 1 }), DimensionMismatch);
}

TEST(Ranking, ExactQueryRanksFirst)
{
	SimilarityIndex index;
	index.vectors = oracle::to_matrix({ { 1, 0 }, { 0.6, 0.8 }, { 0, 1 } });
	index.refs = { { "a", SourceSite::dcard }, { "b", SourceSite::dcard }, { "c", SourceSite::dcard } };
	const auto r = rank_by_similarity(std::vector<double>{ 0.6, 0.8 }, index, 10);
	ASSERT_EQ(r.size(), 3u);
	EXPECT_EQ(r[0].row, 1u);
	EXPECT_EQ(r[0].similarity, 1.0);
	EXPECT_EQ(rank_by_similarity(std::vector<double>{ 0.6, 0.8 }, index, 1).size(), 1u);
	EXPECT_TRUE(rank_by_similarity(std::vector<double>{ 0.6, 0.8 }, index, 0).empty());
}

TEST(Ranking, TiesBreakByPostId)
{
	SimilarityIndex index;
	index.vectors = oracle::to_matrix({ { 1, 0 }, { 1, 0 }, { 1, 0 } });
	index.refs = { { "b", SourceSite::dcard }, { "10", SourceSite::dcard }, { "a", SourceSite::dcard } };
	const auto r = rank_by_similarity(std::vector<double>{ 0, 0 }, index, 3);
	EXPECT_EQ(r[0].row, 1u);
	EXPECT_EQ(r[1].row, 2u);
	EXPECT_EQ(r[2].row, 0u);
}

TEST(Ranking, TenDocFixtureMatchesOracle)
{
	std::mt19937 rng{ 10 };
	const auto docs = random_docs(rng, 10, 12, 8);
	std::vector<PostRef> refs;
	std::vector<std::string> ids;
	for (std::size_t i = 0; i < docs.size(); ++i)
	{
		refs.push_back({ "d" + std::to_string(i), SourceSite::dcard });
		ids.push_back(refs.back().id);
	}
	const auto space = fit_latent_space(docs, refs, 300);
	for (const auto& q : docs)
	{
		const auto query = space.embed(q);
		const auto got = rank_by_similarity(query, space.index, docs.size());
		const auto vectors = oracle::to_dense(space.index.vectors);
		const auto want = oracle::rank(query, vectors, ids);
		ASSERT_EQ(got.size(), want.size());
		// orthogonal documents score round-off around 0, where the two orders may differ
		for (std::size_t i = 0; i < got.size(); ++i)
		{
			const auto w = oracle::cosine(query, vectors[want[i]]);
			if (std::abs(w) > 1e-12) EXPECT_EQ(got[i].row, want[i]);
			EXPECT_NEAR(oracle::cosine(query, vectors[got[i].row]), w, 1e-12);
		}
	}
}

TEST(LatentSpace, SingleDocumentPoolDegradesWithWarnings)
{
	const auto space = fit_latent_space({ { "a", "b" } }, { { "x", SourceSite::dcard } }, 300);
	EXPECT_EQ(space.lsi.k_eff, 0u);
	EXPECT_FALSE(space.warnings.empty());
	const auto r = rank_by_similarity(space.embed(std::vector<std::string>{ "a" }), space.index, 5);
	ASSERT_EQ(r.size(), 1u);
	EXPECT_EQ(r[0].similarity, 0.0);
}

TEST(LatentSpace, RefsMustMatchDocs)
{
	EXPECT_THROW(fit_latent_space({ { "a" }, { "b" } }, { { "x", SourceSite::dcard } }, 2), DimensionMismatch);
}
