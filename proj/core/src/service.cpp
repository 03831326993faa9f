#include <varcorp/service.hpp>

#include <charconv>
#include <mutex>
#include <optional>
#include <set>

#include <httplib.h>

#include <varcorp/error.hpp>
#include <varcorp/utf8.hpp>

namespace varcorp
{
	ServiceState::ServiceState(Corpus corpus, PolarityLexicon lexicon, ServiceConfig config)
		: corpus_(std::move(corpus)), lexicon_(std::move(lexicon)), config_(std::move(config))
	{
		std::map<std::string, TagCount> counts;
		for (const auto& post : corpus_.posts())
		{
			std::set<std::string> seen;
			for (const auto& t : post.tags)
			{
				auto norm = config_.normalizer(t);
				if (norm.empty() || !seen.insert(norm).second) continue;
				auto& c = counts[norm];
				c.tag = norm;
				++(post.source == SourceSite::dcard ? c.dcard : c.weibo);
			}
		}
		for (auto& [tag, c] : counts) tags_.push_back(std::move(c));
	}

	std::vector<TagCount> ServiceState::tags_with_prefix(std::string_view prefix) const
	{
		const auto norm = config_.normalizer(prefix);
		std::vector<TagCount> out;
		for (const auto& t : tags_)
		{
			if (t.tag.starts_with(norm)) out.push_back(t);
		}
		return out;
	}

	TopicPool ServiceState::pool(std::string_view tag, SourceSite source) const
	{
		return pool_by_tag(corpus_, tag, source, config_.normalizer);
	}

	std::shared_ptr<const LatentSpace> ServiceState::space(std::string_view tag) const
	{
		const auto key = config_.normalizer(tag);
		{
			std::shared_lock lock{ cache_mutex_ };
			if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
		}
		// Fitting is deterministic, so two threads racing on a miss produce equal
		// models and whichever lands first is kept.
		auto fitted = std::make_shared<const LatentSpace>(fit_pool_space(pool(key, SourceSite::dcard), config_.lsi_k));
		std::unique_lock lock{ cache_mutex_ };
		return cache_.try_emplace(key, std::move(fitted)).first->second;
	}

	std::size_t ServiceState::cached_models() const
	{
		std::shared_lock lock{ cache_mutex_ };
		return cache_.size();
	}

	Json tags_document(const std::vector<TagCount>& tags)
	{
		auto arr = Json::array();
		for (const auto& t : tags)
		{
			Json e;
			e["tag"] = t.tag;
			e["dcard"] = t.dcard;
			e["weibo"] = t.weibo;
			arr.push_back(std::move(e));
		}
		return arr;
	}

	Json per_site_document(std::string_view tag, const Json* dcard, const Json* weibo)
	{
		Json j;
		j["tag"] = tag;
		if (dcard) j["dcard"] = *dcard;
		if (weibo) j["weibo"] = *weibo;
		return j;
	}

	namespace
	{
		struct BadRequest
		{
			std::string message;
		};

		struct NotFound
		{
			std::string code;
			std::string message;
			Json extra = Json::object();
		};

		Response reply(int status, const Json& body) { return { status, dump(body) }; }

		std::optional<std::string_view> param(const QueryParams& params, std::string_view key)
		{
			const auto it = params.find(key);
			if (it == params.end()) return std::nullopt;
			return std::string_view{ it->second };
		}

		std::uint64_t number_param(const QueryParams& params, std::string_view key, std::uint64_t fallback)
		{
			const auto raw = param(params, key);
			if (!raw || raw->empty()) return fallback;
			std::uint64_t value = 0;
			const auto [end, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), value);
			if (ec != std::errc{} || end != raw->data() + raw->size())
			{
				throw BadRequest{ "parameter '" + std::string{ key } + "' must be a non-negative integer" };
			}
			return value;
		}

		std::string required_tag(const QueryParams& params)
		{
			const auto tag = param(params, "tag");
			if (!tag || utf8::trim(*tag).empty()) throw BadRequest{ "parameter 'tag' is required" };
			return std::string{ *tag };
		}

		/// Both sources when "site" is absent, else the named one.
		std::vector<SourceSite> sites_param(const QueryParams& params)
		{
			const auto raw = param(params, "site");
			if (!raw || raw->empty()) return { SourceSite::dcard, SourceSite::weibo };
			const auto site = parse_source(*raw);
			if (!site) throw BadRequest{ "parameter 'site' must be dcard or weibo" };
			return { *site };
		}

		struct Pools
		{
			std::string tag;
			TopicPool dcard;
			TopicPool weibo;

			const TopicPool& of(SourceSite s) const { return s == SourceSite::dcard ? dcard : weibo; }
		};

		Pools pools_or_404(const ServiceState& state, std::string_view tag)
		{
			Pools p{ state.config().normalizer(tag), state.pool(tag, SourceSite::dcard), state.pool(tag, SourceSite::weibo) };
			if (p.dcard.empty() && p.weibo.empty())
			{
				Json extra;
				extra["side"] = "both";
				throw NotFound{ "TagNotFound", "no posts carry the tag '" + p.tag + "'", std::move(extra) };
			}
			return p;
		}

		Json per_site(const Pools& pools, const std::vector<SourceSite>& sites, auto&& make)
		{
			std::optional<Json> dcard, weibo;
			for (const auto s : sites) (s == SourceSite::dcard ? dcard : weibo) = make(pools.of(s));
			return per_site_document(pools.tag, dcard ? &*dcard : nullptr, weibo ? &*weibo : nullptr);
		}

		Json search(const ServiceState& state, const QueryParams& params)
		{
			const auto tag = required_tag(params);
			const auto seed = number_param(params, "seed", state.config().default_seed);
			const auto top_n = number_param(params, "top_n", state.config().default_top_n);
			const auto norm = state.config().normalizer(tag);
			const auto dcard = state.pool(norm, SourceSite::dcard);
			const auto weibo = state.pool(norm, SourceSite::weibo);
			for (const auto* p : { &dcard, &weibo })
			{
				if (!p->empty()) continue;
				Json extra;
				extra["side"] = to_string(p->source);
				throw NotFound{ "TagNotFound", EmptyPool(p->source).what(), std::move(extra) };
			}
			return to_json(align_query(norm, dcard, weibo, *state.space(norm), seed, top_n));
		}

		Json stats(const ServiceState& state, const QueryParams& params)
		{
			const auto sites = sites_param(params);
			const auto pools = pools_or_404(state, required_tag(params));
			return per_site(pools, sites, [&](const TopicPool& p)
				{ return to_json(quick_stats(p, state.lexicon(), state.config().polarity_mode)); });
		}

		Json freq(const ServiceState& state, const QueryParams& params)
		{
			const auto sites = sites_param(params);
			const auto top_n = number_param(params, "top_n", state.config().default_list_n);
			const auto pools = pools_or_404(state, required_tag(params));
			return per_site(pools, sites, [&](const TopicPool& p)
				{ return to_json(frequency_list(p, top_n, state.config().filter)); });
		}

		Json colloc(const ServiceState& state, const QueryParams& params)
		{
			const auto sites = sites_param(params);
			const auto top_n = number_param(params, "top_n", state.config().default_list_n);
			const auto min_count = number_param(params, "min_count", state.config().default_min_count);
			if (min_count == 0) throw BadRequest{ "parameter 'min_count' must be at least 1" };
			const auto pools = pools_or_404(state, required_tag(params));
			const auto pivot_raw = param(params, "pivot");
			const std::string pivot = pivot_raw && !pivot_raw->empty() ? std::string{ *pivot_raw } : pools.tag;
			return per_site(pools, sites, [&](const TopicPool& p)
				{ return to_json(collocations(build_bigram_stats(p, state.config().filter), pivot, min_count, top_n)); });
		}

		Json report(const ServiceState& state, const QueryParams& params)
		{
			unsigned sections = section_all;
			if (const auto raw = param(params, "sections"); raw && !raw->empty())
			{
				try
				{
					sections = parse_sections(*raw);
				}
				catch (const Error& e)
				{
					throw BadRequest{ e.what() };
				}
			}
			CompareParams cp;
			cp.freq_top_n = cp.colloc_top_n = number_param(params, "top_n", state.config().default_list_n);
			cp.min_count = number_param(params, "min_count", state.config().default_min_count);
			if (cp.min_count == 0) throw BadRequest{ "parameter 'min_count' must be at least 1" };
			if (const auto pivot = param(params, "pivot")) cp.pivot = std::string{ *pivot };
			cp.filter = state.config().filter;
			cp.polarity_mode = state.config().polarity_mode;
			const auto pools = pools_or_404(state, required_tag(params));
			return to_json(compare_sites(pools.tag, pools.dcard, pools.weibo, state.lexicon(), cp), sections);
		}
	}

	Response handle_request(const ServiceState& state, std::string_view path, const QueryParams& params)
	{
		try
		{
			if (path == "/api/tags")
			{
				const auto prefix = param(params, "prefix").value_or("");
				return reply(200, ok_envelope(tags_document(state.tags_with_prefix(prefix))));
			}
			if (path == "/api/search") return reply(200, ok_envelope(search(state, params)));
			if (path == "/api/stats") return reply(200, ok_envelope(stats(state, params)));
			if (path == "/api/freq") return reply(200, ok_envelope(freq(state, params)));
			if (path == "/api/colloc") return reply(200, ok_envelope(colloc(state, params)));
			if (path == "/api/report") return reply(200, ok_envelope(report(state, params)));
			return reply(404, error_envelope("NotFound", "no endpoint at " + std::string{ path }));
		}
		catch (const BadRequest& e)
		{
			return reply(400, error_envelope("BadRequest", e.message));
		}
		catch (const NotFound& e)
		{
			return reply(404, error_envelope(e.code, e.message, e.extra));
		}
		catch (const std::exception& e)
		{
			return reply(500, error_envelope("InternalError", e.what()));
		}
	}

	struct Server::Impl
	{
		explicit Impl(const ServiceState& s) : state(s) {}

		const ServiceState& state;
		httplib::Server http;
	};

	Server::Server(const ServiceState& state) : impl_(std::make_unique<Impl>(state))
	{
		impl_->http.Get(R"(/api/.*)", [this](const httplib::Request& req, httplib::Response& res)
		{
			QueryParams params;
			// first value wins for repeated keys
			for (const auto& [key, value] : req.params) params.try_emplace(key, value);
			auto r = handle_request(impl_->state, req.path, params);
			res.status = r.status;
			res.set_header("Access-Control-Allow-Origin", "*");
			res.set_content(std::move(r.body), "application/json; charset=utf-8");
		});
	}

	Server::~Server() { stop(); }

	int Server::bind(const std::string& host, int port)
	{
		const int bound = port == 0 ? impl_->http.bind_to_any_port(host) : (impl_->http.bind_to_port(host, port) ? port : -1);
		if (bound < 0) throw Error("cannot bind to " + host + ":" + std::to_string(port));
		return bound;
	}

	void Server::listen() { impl_->http.listen_after_bind(); }

	void Server::stop() { impl_->http.stop(); }

	std::pair<std::string, int> parse_bind(std::string_view bind)
	{
		const auto colon = bind.rfind(':');
		if (colon == std::string_view::npos || colon == 0) throw Error("bind address must look like host:port");
		const auto port_text = bind.substr(colon + 1);
		int port = -1;
		const auto [end, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
		if (ec != std::errc{} || end != port_text.data() + port_text.size() || port < 0 || port > 65535)
		{
			throw Error("bad port in bind address '" + std::string{ bind } + "'");
		}
		return { std::string{ bind.substr(0, colon) }, port };
	}
}
