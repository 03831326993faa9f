#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace varcorp
{
	/// Dense row-major matrix of doubles.
	class Matrix
	{
	public:
		Matrix() = default;
		Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

		std::size_t rows() const noexcept { return rows_; }
		std::size_t cols() const noexcept { return cols_; }

		double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
		double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

		std::span<double> row(std::size_t r) noexcept { return { data_.data() + r * cols_, cols_ }; }
		std::span<const double> row(std::size_t r) const noexcept { return { data_.data() + r * cols_, cols_ }; }

		const std::vector<double>& data() const noexcept { return data_; }
		std::vector<double>& data() noexcept { return data_; }

		Matrix transposed() const;

		bool operator==(const Matrix&) const = default;

	private:
		std::size_t rows_ = 0;
		std::size_t cols_ = 0;
		std::vector<double> data_;
	};

	/// Thin singular value decomposition A = U diag(sigma) V^T.
	/// For an m x n input with p = min(m, n): U is m x p, V is n x p and sigma has p
	/// entries sorted non-increasing. Columns whose singular value is exactly zero
	/// are zero in U (or V) rather than completed to an orthonormal basis.
	struct SvdResult
	{
		Matrix u;
		std::vector<double> sigma;
		Matrix v;
	};

	/// Householder QR followed by one-sided (Hestenes) Jacobi on the triangular
	/// factor. Single-threaded with a fixed rotation order, so the result is
	/// bit-reproducible for a given input.
	SvdResult thin_svd(const Matrix& a);

	/// Number of singular values above max(m, n) * eps * sigma_max.
	std::size_t numerical_rank(std::span<const double> sigma, std::size_t rows, std::size_t cols);
}
