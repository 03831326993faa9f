#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <varcorp/linalg.hpp>

#include "oracles.hpp"

using varcorp::Matrix;

namespace
{
	Matrix random_matrix(std::size_t m, std::size_t n, std::mt19937_64& rng)
	{
		std::uniform_real_distribution<double> u{ -1.0, 1.0 };
		Matrix a(m, n);
		for (auto& v : a.data()) v = u(rng);
		return a;
	}

	double orthonormality_error(const Matrix& u, std::size_t cols)
	{
		double worst = 0;
		for (std::size_t i = 0; i < cols; ++i)
		{
			for (std::size_t j = 0; j < cols; ++j)
			{
				double dot = 0;
				for (std::size_t r = 0; r < u.rows(); ++r) dot += u(r, i) * u(r, j);
				worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
			}
		}
		return worst;
	}

	double reconstruction_error(const Matrix& a, const varcorp::SvdResult& s)
	{
		double diff = 0, norm = 0;
		for (std::size_t r = 0; r < a.rows(); ++r)
		{
			for (std::size_t c = 0; c < a.cols(); ++c)
			{
				double v = 0;
				for (std::size_t k = 0; k < s.sigma.size(); ++k) v += s.u(r, k) * s.sigma[k] * s.v(c, k);
				diff += (a(r, c) - v) * (a(r, c) - v);
				norm += a(r, c) * a(r, c);
			}
		}
		return std::sqrt(diff / norm);
	}
}

TEST(Svd, Identity)
{
	Matrix a(3, 3);
	for (std::size_t i = 0; i < 3; ++i) a(i, i) = 1;
	const auto s = varcorp::thin_svd(a);
	EXPECT_EQ(s.sigma, (std::vector<double>{ 1, 1, 1 }));
	EXPECT_LE(orthonormality_error(s.u, 3), 1e-15);
}

TEST(Svd, Diagonal)
{
	Matrix a(3, 3);
	a(0, 0) = 1;
	a(1, 1) = 3;
	a(2, 2) = 2;
	const auto s = varcorp::thin_svd(a);
	EXPECT_EQ(s.sigma, (std::vector<double>{ 3, 2, 1 }));
	EXPECT_EQ(std::abs(s.u(1, 0)), 1.0);
	EXPECT_EQ(std::abs(s.u(2, 1)), 1.0);
}

TEST(Svd, RandomEightBySixMatchesEigen)
{
	std::mt19937_64 rng{ 86 };
	const auto a = random_matrix(8, 6, rng);
	const auto s = varcorp::thin_svd(a);
	const auto want = oracle::singular_values(a);
	ASSERT_EQ(s.sigma.size(), want.size());
	for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(s.sigma[i], want[i], 1e-8);
	EXPECT_LE(orthonormality_error(s.u, 6), 1e-8);
	EXPECT_LE(orthonormality_error(s.v, 6), 1e-8);
	EXPECT_LE(reconstruction_error(a, s), 1e-12);
}

TEST(Svd, WideMatrices)
{
	std::mt19937_64 rng{ 5 };
	const auto a = random_matrix(4, 9, rng);
	const auto s = varcorp::thin_svd(a);
	ASSERT_EQ(s.u.rows(), 4u);
	ASSERT_EQ(s.v.rows(), 9u);
	const auto want = oracle::singular_values(a);
	for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(s.sigma[i], want[i], 1e-10);
	EXPECT_LE(reconstruction_error(a, s), 1e-12);
}

TEST(Svd, RankDeficient)
{
	Matrix a(5, 4);
	std::mt19937_64 rng{ 9 };
	const auto b = random_matrix(5, 2, rng);
	for (std::size_t r = 0; r < 5; ++r)
	{
		a(r, 0) = b(r, 0);
		a(r, 1) = b(r, 1);
		a(r, 2) = b(r, 0) + b(r, 1);
		a(r, 3) = 2 * b(r, 0);
	}
	const auto s = varcorp::thin_svd(a);
	EXPECT_EQ(varcorp::numerical_rank(s.sigma, 5, 4), 2u);
	EXPECT_LE(reconstruction_error(a, s), 1e-12);
}

TEST(Svd, ZeroMatrixHasRankZero)
{
	const auto s = varcorp::thin_svd(Matrix(3, 2));
	EXPECT_EQ(varcorp::numerical_rank(s.sigma, 3, 2), 0u);
}

TEST(Svd, BitReproducible)
{
	std::mt19937_64 rng{ 1 };
	const auto a = random_matrix(30, 20, rng);
	const auto x = varcorp::thin_svd(a);
	const auto y = varcorp::thin_svd(a);
	EXPECT_EQ(x.sigma, y.sigma);
	EXPECT_EQ(x.u, y.u);
	EXPECT_EQ(x.v, y.v);
}

TEST(Svd, RandomSuiteAgainstEigen)
{
	std::mt19937_64 rng{ 77 };
	for (int i = 0; i < 20; ++i)
	{
		const auto m = 1 + rng() % 50, n = 1 + rng() % 50;
		const auto a = random_matrix(m, n, rng);
		const auto s = varcorp::thin_svd(a);
		const auto want = oracle::singular_values(a);
		for (std::size_t k = 0; k < want.size(); ++k) ASSERT_NEAR(s.sigma[k], want[k], 1e-8) << m << "x" << n;
		ASSERT_LE(orthonormality_error(s.u, std::min(m, n)), 1e-8);
		ASSERT_LE(reconstruction_error(a, s), 1e-6);
	}
}

TEST(Matrix, Transpose)
{
	Matrix a(2, 3);
	a(0, 2) = 5;
	const auto t = a.transposed();
	EXPECT_EQ(t.rows(), 3u);
	EXPECT_EQ(t(2, 0), 5);
}
