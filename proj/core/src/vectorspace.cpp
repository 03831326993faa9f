#include <varcorp/vectorspace.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <varcorp/error.hpp>

namespace varcorp
{
	TermId Vocabulary::add(std::string_view term)
	{
		if (const auto it = ids_.find(term); it != ids_.end()) return it->second;
		const auto id = static_cast<TermId>(terms_.size());
		terms_.emplace_back(term);
		ids_.emplace(terms_.back(), id);
		return id;
	}

	std::optional<TermId> Vocabulary::find(std::string_view term) const
	{
		if (const auto it = ids_.find(term); it != ids_.end()) return it->second;
		return std::nullopt;
	}

	Vocabulary build_vocabulary(const TokenLists& token_lists)
	{
		Vocabulary vocab;
		for (const auto& doc : token_lists)
		{
			for (const auto& t : doc) vocab.add(t);
		}
		if (vocab.size() == 0) throw EmptyCorpus("no tokens to build a vocabulary from");
		return vocab;
	}

	BowVector to_bow(std::span<const std::string> tokens, const Vocabulary& vocab)
	{
		std::map<TermId, std::uint32_t> counts;
		for (const auto& t : tokens)
		{
			if (const auto id = vocab.find(t)) ++counts[*id];
		}
		return { counts.begin(), counts.end() };
	}

	TfIdfModel fit_tfidf(const std::vector<BowVector>& bows, Vocabulary vocab)
	{
		if (bows.empty()) throw EmptyCorpus("tf-idf needs at least one document");
		TfIdfModel model;
		model.doc_count = bows.size();
		model.df.assign(vocab.size(), 0);
		for (const auto& bow : bows)
		{
			for (const auto& [id, count] : bow)
			{
				if (id >= vocab.size()) throw DimensionMismatch(vocab.size(), id + std::size_t{ 1 });
				++model.df[id];
			}
		}
		model.idf.resize(vocab.size());
		const auto n = static_cast<double>(model.doc_count);
		for (std::size_t t = 0; t < vocab.size(); ++t)
		{
			// Terms never seen in these documents get df clamped to 1 so idf stays finite.
			const auto df = std::max<std::uint64_t>(model.df[t], 1);
			model.idf[t] = model.df[t] == model.doc_count ? 0.0 : std::log2(n / static_cast<double>(df));
		}
		model.vocab = std::move(vocab);
		return model;
	}

	SparseVector transform_tfidf(const BowVector& bow, const TfIdfModel& model)
	{
		SparseVector out;
		out.reserve(bow.size());
		// Counts are divided by their common factor first. Normalisation cancels the
		// factor anyway; doing it up front makes repeated text give bit-identical vectors.
		std::uint64_t common = 0;
		for (const auto& [id, count] : bow) common = std::gcd(common, static_cast<std::uint64_t>(count));
		double norm2 = 0;
		for (const auto& [id, count] : bow)
		{
			if (id >= model.idf.size()) continue;
			const double w = static_cast<double>(static_cast<std::uint64_t>(count) / common) * model.idf[id];
			if (w == 0) continue;
			out.emplace_back(id, w);
			norm2 += w * w;
		}
		if (out.empty()) return out;
		const double norm = std::sqrt(norm2);
		for (auto& e : out) e.second /= norm;
		return out;
	}

	LsiModel fit_lsi(const std::vector<SparseVector>& columns, std::size_t vocab_size, std::size_t k)
	{
		if (k == 0) throw Error("LSI dimensionality must be at least 1");
		Matrix x(vocab_size, columns.size());
		bool nonzero = false;
		for (std::size_t d = 0; d < columns.size(); ++d)
		{
			for (const auto& [id, w] : columns[d])
			{
				if (id >= vocab_size) throw DimensionMismatch(vocab_size, id + std::size_t{ 1 });
				x(id, d) = w;
				nonzero = nonzero || w != 0;
			}
		}
		if (!nonzero) throw DegenerateMatrix("tf-idf matrix is all zero");

		auto svd = thin_svd(x);
		LsiModel lsi;
		lsi.k = k;
		lsi.k_eff = std::min(k, numerical_rank(svd.sigma, x.rows(), x.cols()));
		lsi.sigma.assign(svd.sigma.begin(), svd.sigma.begin() + static_cast<std::ptrdiff_t>(lsi.k_eff));
		lsi.u = Matrix(vocab_size, lsi.k_eff);
		for (std::size_t c = 0; c < lsi.k_eff; ++c)
		{
			std::size_t arg = 0;
			for (std::size_t r = 1; r < vocab_size; ++r)
			{
				if (std::abs(svd.u(r, c)) > std::abs(svd.u(arg, c))) arg = r;
			}
			const double sign = svd.u(arg, c) < 0 ? -1.0 : 1.0;
			for (std::size_t r = 0; r < vocab_size; ++r) lsi.u(r, c) = sign * svd.u(r, c);
		}
		return lsi;
	}

	std::vector<double> project_lsi(const SparseVector& x, const LsiModel& lsi)
	{
		std::vector<double> out(lsi.k_eff, 0.0);
		for (const auto& [id, w] : x)
		{
			if (id >= lsi.u.rows()) throw DimensionMismatch(lsi.u.rows(), id + std::size_t{ 1 });
			const auto row = lsi.u.row(id);
			for (std::size_t c = 0; c < lsi.k_eff; ++c) out[c] += w * row[c];
		}
		return out;
	}

	std::vector<double> project_lsi(std::span<const double> x, const LsiModel& lsi)
	{
		if (x.size() != lsi.u.rows()) throw DimensionMismatch(lsi.u.rows(), x.size());
		std::vector<double> out(lsi.k_eff, 0.0);
		for (std::size_t r = 0; r < x.size(); ++r)
		{
			if (x[r] == 0) continue;
			const auto row = lsi.u.row(r);
			for (std::size_t c = 0; c < lsi.k_eff; ++c) out[c] += x[r] * row[c];
		}
		return out;
	}

	double cosine(std::span<const double> a, std::span<const double> b)
	{
		if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
		double ab = 0, aa = 0, bb = 0;
		for (std::size_t i = 0; i < a.size(); ++i)
		{
			ab += a[i] * b[i];
			aa += a[i] * a[i];
			bb += b[i] * b[i];
		}
		if (aa == 0 || bb == 0) return 0.0;
		// sqrt(x * x) == x exactly, so a vector compared with itself scores exactly 1.
		return std::clamp(ab / std::sqrt(aa * bb), -1.0, 1.0);
	}

	std::vector<Ranked> rank_by_similarity(std::span<const double> query, const SimilarityIndex& index, std::size_t top_n)
	{
		std::vector<Ranked> ranked;
		ranked.reserve(index.refs.size());
		for (std::size_t r = 0; r < index.refs.size(); ++r)
		{
			ranked.push_back({ r, cosine(query, index.vectors.row(r)) });
		}
		std::sort(ranked.begin(), ranked.end(), [&index](const Ranked& x, const Ranked& y)
		{
			if (x.similarity != y.similarity) return x.similarity > y.similarity;
			if (index.refs[x.row].id != index.refs[y.row].id) return index.refs[x.row].id < index.refs[y.row].id;
			return x.row < y.row;
		});
		ranked.resize(std::min(top_n, ranked.size()));
		return ranked;
	}

	std::vector<double> LatentSpace::embed(std::span<const std::string> tokens) const
	{
		return project_lsi(transform_tfidf(to_bow(tokens, tfidf.vocab), tfidf), lsi);
	}

	std::vector<std::string> latent_space_warnings(std::size_t doc_count, const LsiModel& lsi)
	{
		std::vector<std::string> w;
		if (doc_count < 3)
		{
			w.push_back("pool has " + std::to_string(doc_count) + " document(s); latent space collapses to k_eff="
				+ std::to_string(lsi.k_eff));
		}
		if (lsi.k_eff == 0) w.push_back("tf-idf matrix is all zero; every similarity is 0");
		return w;
	}

	LatentSpace fit_latent_space(const TokenLists& docs, std::vector<PostRef> refs, std::size_t k)
	{
		if (refs.size() != docs.size()) throw DimensionMismatch(docs.size(), refs.size());
		if (k == 0) throw Error("LSI dimensionality must be at least 1");

		LatentSpace space;
		Vocabulary vocab;
		for (const auto& d : docs)
		{
			for (const auto& t : d) vocab.add(t);
		}

		std::vector<BowVector> bows;
		bows.reserve(docs.size());
		for (const auto& d : docs) bows.push_back(to_bow(d, vocab));
		if (bows.empty())
		{
			space.tfidf.vocab = std::move(vocab);
		}
		else
		{
			space.tfidf = fit_tfidf(bows, std::move(vocab));
		}

		std::vector<SparseVector> columns;
		columns.reserve(bows.size());
		for (const auto& b : bows) columns.push_back(transform_tfidf(b, space.tfidf));

		const auto v = space.tfidf.vocab.size();
		try
		{
			space.lsi = fit_lsi(columns, v, k);
		}
		catch (const DegenerateMatrix&)
		{
			space.lsi = LsiModel{ k, 0, Matrix(v, 0), {} };
		}

		space.index.vectors = Matrix(docs.size(), space.lsi.k_eff);
		for (std::size_t d = 0; d < columns.size(); ++d)
		{
			const auto z = project_lsi(columns[d], space.lsi);
			std::copy(z.begin(), z.end(), space.index.vectors.row(d).begin());
		}
		space.index.refs = std::move(refs);
		space.warnings = latent_space_warnings(docs.size(), space.lsi);
		return space;
	}
}
