#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <varcorp/align.hpp>
#include <varcorp/analyze.hpp>
#include <varcorp/post.hpp>
#include <varcorp/serialize.hpp>

namespace varcorp
{
	struct ServiceConfig
	{
		std::size_t lsi_k = 300;
		TagNormalizer normalizer;
		PolarityMode polarity_mode = PolarityMode::per_post_mean;
		TokenFilter filter;
		std::uint64_t default_seed = 0;
		std::size_t default_top_n = 10;
		std::size_t default_list_n = 20;
		std::size_t default_min_count = 3;
	};

	struct TagCount
	{
		std::string tag;
		std::size_t dcard = 0;
		std::size_t weibo = 0;

		bool operator==(const TagCount&) const = default;
	};

	/// Read-only corpus state shared by all requests. The only mutable part is the
	/// per-tag model cache, which is filled idempotently.
	class ServiceState
	{
	public:
		ServiceState(Corpus corpus, PolarityLexicon lexicon, ServiceConfig config = {});

		const Corpus& corpus() const noexcept { return corpus_; }
		const PolarityLexicon& lexicon() const noexcept { return lexicon_; }
		const ServiceConfig& config() const noexcept { return config_; }

		/// Normalised tags in byte order, each with its per-source pool size.
		const std::vector<TagCount>& tags() const noexcept { return tags_; }
		std::vector<TagCount> tags_with_prefix(std::string_view prefix) const;

		TopicPool pool(std::string_view tag, SourceSite source) const;

		/// Latent space fitted on the Dcard pool of `tag`, computed on first use.
		std::shared_ptr<const LatentSpace> space(std::string_view tag) const;
		std::size_t cached_models() const;

	private:
		Corpus corpus_;
		PolarityLexicon lexicon_;
		ServiceConfig config_;
		std::vector<TagCount> tags_;

		mutable std::shared_mutex cache_mutex_;
		mutable std::map<std::string, std::shared_ptr<const LatentSpace>, std::less<>> cache_;
	};

	using QueryParams = std::map<std::string, std::string, std::less<>>;

	struct Response
	{
		int status = 200;
		std::string body;
	};

	/// Routes one GET request. Bodies are {"ok": true, "data": ...} or
	/// {"ok": false, "error": {...}} documents.
	Response handle_request(const ServiceState& state, std::string_view path, const QueryParams& params);

	/// Library-side documents the endpoints return as "data".
	Json tags_document(const std::vector<TagCount>& tags);
	Json per_site_document(std::string_view tag, const Json* dcard, const Json* weibo);

	class Server
	{
	public:
		explicit Server(const ServiceState& state);
		~Server();
		Server(const Server&) = delete;
		Server& operator=(const Server&) = delete;

		/// Binds to host:port (port 0 picks a free one) and returns the bound port; throws Error on failure.
		int bind(const std::string& host, int port);
		/// Serves until stop() is called.
		void listen();
		void stop();

	private:
		struct Impl;
		std::unique_ptr<Impl> impl_;
	};

	/// Splits "host:port"; throws Error on a malformed address.
	std::pair<std::string, int> parse_bind(std::string_view bind);
}
