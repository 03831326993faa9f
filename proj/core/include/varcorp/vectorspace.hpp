#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <varcorp/linalg.hpp>
#include <varcorp/post.hpp>
#include <varcorp/segment.hpp>

namespace varcorp
{
	using TermId = std::uint32_t;
	using TokenLists = std::vector<std::vector<std::string>>;

	/// Dense term ids 0..size()-1 in first-appearance order.
	class Vocabulary
	{
	public:
		TermId add(std::string_view term);
		std::optional<TermId> find(std::string_view term) const;
		const std::string& term(TermId id) const { return terms_.at(id); }
		const std::vector<std::string>& terms() const noexcept { return terms_; }
		std::size_t size() const noexcept { return terms_.size(); }

		bool operator==(const Vocabulary& o) const { return terms_ == o.terms_; }

	private:
		std::unordered_map<std::string, TermId, StringHash, std::equal_to<>> ids_;
		std::vector<std::string> terms_;
	};

	/// Throws EmptyCorpus when every token list is empty.
	Vocabulary build_vocabulary(const TokenLists& token_lists);

	/// Sparse (id, count) pairs sorted by id; counts are positive.
	using BowVector = std::vector<std::pair<TermId, std::uint32_t>>;

	/// Tokens missing from the vocabulary are dropped.
	BowVector to_bow(std::span<const std::string> tokens, const Vocabulary& vocab);

	/// Sparse (id, weight) pairs sorted by id; zero weights are not stored.
	using SparseVector = std::vector<std::pair<TermId, double>>;

	struct TfIdfModel
	{
		Vocabulary vocab;
		std::size_t doc_count = 0;
		std::vector<std::uint64_t> df;
		/// log2(doc_count / df)
		std::vector<double> idf;
	};

	TfIdfModel fit_tfidf(const std::vector<BowVector>& bows, Vocabulary vocab);

	/// count * idf per term, then L2-normalised. All-zero input maps to the empty vector.
	SparseVector transform_tfidf(const BowVector& bow, const TfIdfModel& model);

	struct LsiModel
	{
		std::size_t k = 300;
		std::size_t k_eff = 0;
		/// terms x k_eff, orthonormal columns, largest-magnitude entry of each column positive
		Matrix u;
		std::vector<double> sigma;
	};

	/// Truncated SVD of the terms x documents matrix whose columns are `columns`.
	/// k_eff = min(k, numerical rank). Throws DegenerateMatrix when every column is zero.
	LsiModel fit_lsi(const std::vector<SparseVector>& columns, std::size_t vocab_size, std::size_t k = 300);

	/// U_k^T x. Throws DimensionMismatch if x does not live in the model's term space.
	std::vector<double> project_lsi(const SparseVector& x, const LsiModel& lsi);
	std::vector<double> project_lsi(std::span<const double> x, const LsiModel& lsi);

	/// a.b / (|a| |b|), or 0 when either norm is 0. Throws DimensionMismatch on length mismatch.
	double cosine(std::span<const double> a, std::span<const double> b);

	struct PostRef
	{
		std::string id;
		SourceSite source = SourceSite::dcard;

		bool operator==(const PostRef&) const = default;
	};

	/// Latent vectors of a document pool, one row per document.
	struct SimilarityIndex
	{
		Matrix vectors;
		std::vector<PostRef> refs;
	};

	struct Ranked
	{
		std::size_t row;
		double similarity;
	};

	/// Descending similarity, ties by post id ascending; min(top_n, pool size) entries.
	std::vector<Ranked> rank_by_similarity(std::span<const double> query, const SimilarityIndex& index, std::size_t top_n);

	/// tf-idf + LSI models fitted on one pool, with the pool's latent vectors.
	struct LatentSpace
	{
		TfIdfModel tfidf;
		LsiModel lsi;
		SimilarityIndex index;
		std::vector<std::string> warnings;

		/// Query path: tokens -> bag of words -> tf-idf -> latent vector.
		std::vector<double> embed(std::span<const std::string> tokens) const;
	};

	/// Fits the models on the given documents. Pools whose tf-idf matrix is all zero
	/// (a single document, or every term in every document) get k_eff = 0 and a warning
	/// instead of an error, so alignment still runs with all similarities 0.
	LatentSpace fit_latent_space(const TokenLists& docs, std::vector<PostRef> refs, std::size_t k = 300);

	std::vector<std::string> latent_space_warnings(std::size_t doc_count, const LsiModel& lsi);
}
