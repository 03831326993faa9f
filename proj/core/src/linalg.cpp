#include <varcorp/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace varcorp
{
	namespace
	{
		using Column = std::vector<double>;

		double dot(const double* a, const double* b, std::size_t n) noexcept
		{
			double s = 0;
			for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
			return s;
		}

		struct Reflector
		{
			std::size_t offset;
			Column v;   // unit vector acting on rows [offset, m); empty means identity
		};

		void reflect(const Reflector& h, double* y) noexcept
		{
			if (h.v.empty()) return;
			double* x = y + h.offset;
			const double d = 2 * dot(h.v.data(), x, h.v.size());
			for (std::size_t i = 0; i < h.v.size(); ++i) x[i] -= d * h.v[i];
		}

		/// One-sided Jacobi on the columns of w (n columns of length n), accumulating
		/// rotations into j. Cyclic row ordering, fixed for reproducibility.
		void jacobi_orthogonalize(std::vector<Column>& w, std::vector<Column>& j)
		{
			const std::size_t n = w.size();
			if (n < 2) return;
			const std::size_t len = w[0].size();
			const double tol = static_cast<double>(n) * std::numeric_limits<double>::epsilon();
			constexpr int max_sweeps = 80;

			for (int sweep = 0; sweep < max_sweeps; ++sweep)
			{
				bool rotated = false;
				for (std::size_t p = 0; p + 1 < n; ++p)
				{
					for (std::size_t q = p + 1; q < n; ++q)
					{
						const double alpha = dot(w[p].data(), w[p].data(), len);
						const double beta = dot(w[q].data(), w[q].data(), len);
						const double gamma = dot(w[p].data(), w[q].data(), len);
						if (gamma == 0 || alpha == 0 || beta == 0) continue;
						if (std::abs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;

						const double zeta = (beta - alpha) / (2 * gamma);
						const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
						const double c = 1 / std::sqrt(1 + t * t);
						const double s = c * t;
						auto rotate = [c, s](Column& a, Column& b)
						{
							for (std::size_t i = 0; i < a.size(); ++i)
							{
								const double x = a[i], y = b[i];
								a[i] = c * x - s * y;
								b[i] = s * x + c * y;
							}
						};
						rotate(w[p], w[q]);
						rotate(j[p], j[q]);
						rotated = true;
					}
				}
				if (!rotated) break;
			}
		}

		/// m >= n
		SvdResult svd_tall(const Matrix& a)
		{
			const std::size_t m = a.rows(), n = a.cols();
			std::vector<Column> cols(n, Column(m));
			for (std::size_t r = 0; r < m; ++r)
			{
				for (std::size_t c = 0; c < n; ++c) cols[c][r] = a(r, c);
			}

			std::vector<Reflector> reflectors;
			reflectors.reserve(n);
			for (std::size_t k = 0; k < n; ++k)
			{
				Reflector h{ k, {} };
				const double* x = cols[k].data() + k;
				const double norm = std::sqrt(dot(x, x, m - k));
				if (norm > 0)
				{
					h.v.assign(x, x + (m - k));
					const double alpha = h.v[0] >= 0 ? -norm : norm;
					h.v[0] -= alpha;
					const double vnorm = std::sqrt(dot(h.v.data(), h.v.data(), h.v.size()));
					for (auto& e : h.v) e /= vnorm;
					for (std::size_t c = k; c < n; ++c) reflect(h, cols[c].data());
				}
				reflectors.push_back(std::move(h));
			}

			// Upper triangle of the reduced columns is R.
			std::vector<Column> w(n, Column(n, 0.0));
			std::vector<Column> rot(n, Column(n, 0.0));
			for (std::size_t c = 0; c < n; ++c)
			{
				for (std::size_t r = 0; r <= c; ++r) w[c][r] = cols[c][r];
				rot[c][c] = 1.0;
			}
			cols.clear();

			jacobi_orthogonalize(w, rot);

			std::vector<double> norms(n);
			for (std::size_t c = 0; c < n; ++c) norms[c] = std::sqrt(dot(w[c].data(), w[c].data(), n));
			std::vector<std::size_t> order(n);
			std::iota(order.begin(), order.end(), 0);
			std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

			SvdResult out{ Matrix(m, n), std::vector<double>(n), Matrix(n, n) };
			Column y(m);
			for (std::size_t k = 0; k < n; ++k)
			{
				const auto src = order[k];
				const double sigma = norms[src];
				out.sigma[k] = sigma;
				for (std::size_t r = 0; r < n; ++r) out.v(r, k) = rot[src][r];
				if (sigma == 0) continue;

				std::fill(y.begin(), y.end(), 0.0);
				for (std::size_t r = 0; r < n; ++r) y[r] = w[src][r] / sigma;
				for (std::size_t h = n; h-- > 0;) reflect(reflectors[h], y.data());
				for (std::size_t r = 0; r < m; ++r) out.u(r, k) = y[r];
			}
			return out;
		}
	}

	Matrix Matrix::transposed() const
	{
		Matrix t(cols_, rows_);
		for (std::size_t r = 0; r < rows_; ++r)
		{
			for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
		}
		return t;
	}

	SvdResult thin_svd(const Matrix& a)
	{
		if (a.rows() >= a.cols()) return svd_tall(a);
		auto r = svd_tall(a.transposed());
		std::swap(r.u, r.v);
		return r;
	}

	std::size_t numerical_rank(std::span<const double> sigma, std::size_t rows, std::size_t cols)
	{
		if (sigma.empty() || !(sigma[0] > 0)) return 0;
		const double tol = static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() * sigma[0];
		return static_cast<std::size_t>(std::count_if(sigma.begin(), sigma.end(), [tol](double s) { return s > tol; }));
	}
}
