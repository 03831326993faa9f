#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include <varcorp/align.hpp>
#include <varcorp/analyze.hpp>
#include <varcorp/error.hpp>
#include <varcorp/index_io.hpp>
#include <varcorp/ingest.hpp>
#include <varcorp/segment.hpp>
#include <varcorp/serialize.hpp>
#include <varcorp/service.hpp>

namespace varcorp::cli
{
	namespace
	{
		/// A usage problem detected after CLI11 accepted the arguments.
		struct UsageError
		{
			std::string message;
		};

		/// JSON config file. Keys are dotted paths ("segmenter.dict.dcard"), looked up
		/// first as a literal key and then as nested objects.
		class Config
		{
		public:
			Config() = default;
			explicit Config(const std::filesystem::path& path) : root_(parse(path)) {}

			std::optional<std::string> string(const std::string& key) const
			{
				const auto* v = find(key);
				if (!v) return std::nullopt;
				if (!v->is_string()) throw Error("config key " + key + " must be a string");
				return v->get<std::string>();
			}

			std::optional<std::size_t> size(const std::string& key) const
			{
				const auto* v = find(key);
				if (!v) return std::nullopt;
				if (!v->is_number_unsigned()) throw Error("config key " + key + " must be a non-negative integer");
				return v->get<std::size_t>();
			}

		private:
			static nlohmann::json parse(const std::filesystem::path& path)
			{
				auto j = nlohmann::json::parse(read_file(path), nullptr, false);
				if (j.is_discarded() || !j.is_object()) throw Error(path.string() + ": config must be a JSON object");
				return j;
			}

			const nlohmann::json* find(const std::string& key) const
			{
				if (!root_.is_object()) return nullptr;
				if (const auto it = root_.find(key); it != root_.end()) return &*it;
				const nlohmann::json* node = &root_;
				std::size_t pos = 0;
				while (pos <= key.size())
				{
					auto dot = key.find('.', pos);
					if (dot == std::string::npos) dot = key.size();
					if (!node->is_object()) return nullptr;
					const auto it = node->find(key.substr(pos, dot - pos));
					if (it == node->end()) return nullptr;
					node = &*it;
					pos = dot + 1;
				}
				return node;
			}

			nlohmann::json root_;
		};

		Config load_config(const std::string& path) { return path.empty() ? Config{} : Config{ path }; }

		/// Flag value when given, else the config value, else empty.
		std::string path_setting(const std::string& flag, const Config& config, const std::string& key)
		{
			if (!flag.empty()) return flag;
			return config.string(key).value_or("");
		}

		TagNormalizer make_normalizer(const std::string& script_map)
		{
			return script_map.empty() ? TagNormalizer{} : TagNormalizer{ load_script_map(script_map) };
		}

		/// Posts of one source from a corpus file; other sources in the file are ignored.
		std::vector<Post> posts_of(const std::string& path, SourceSite source)
		{
			auto corpus = read_corpus(std::filesystem::path{ path });
			std::vector<Post> out;
			for (auto& p : corpus.posts())
			{
				if (p.source == source) out.push_back(std::move(p));
			}
			return out;
		}

		Corpus load_pair(const std::string& dcard_path, const std::string& weibo_path)
		{
			auto posts = posts_of(dcard_path, SourceSite::dcard);
			auto weibo = posts_of(weibo_path, SourceSite::weibo);
			posts.insert(posts.end(), std::make_move_iterator(weibo.begin()), std::make_move_iterator(weibo.end()));
			return Corpus{ std::move(posts) };
		}

		void warn_untokenized(const TopicPool& pool, std::ostream& err)
		{
			if (pool.empty()) return;
			const bool none = std::all_of(pool.posts.begin(), pool.posts.end(), [](const Post& p) { return p.tokens.empty(); });
			if (none) err << "warning: no " << to_string(pool.source) << " post in the pool has tokens; run tokenize first\n";
		}

		enum class Format
		{
			text,
			structured
		};

		const std::map<std::string, Format> format_names{ { "text", Format::text }, { "structured", Format::structured } };
		const std::map<std::string, PolarityMode> polarity_names{
			{ "per-post", PolarityMode::per_post_mean }, { "pooled", PolarityMode::pooled_tokens } };

		void write_text_file(const std::filesystem::path& path, const Corpus& corpus)
		{
			if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
			write_corpus(corpus, path);
		}

		struct IngestOptions
		{
			std::string source;
			std::vector<std::string> inputs;
			std::string out;
			std::string id_prefix = "weibo-";
		};

		int run_ingest(const IngestOptions& o, std::ostream& out, std::ostream& err)
		{
			const auto source = *parse_source(o.source);
			std::vector<Post> posts;
			std::set<std::string> ids;
			std::size_t rejected = 0;
			bool failed = false;

			for (std::size_t f = 0; f < o.inputs.size(); ++f)
			{
				const auto& path = o.inputs[f];
				std::string text;
				try
				{
					text = read_file(path);
				}
				catch (const Error& e)
				{
					err << path << ": " << e.what() << "\n";
					failed = true;
					continue;
				}

				std::vector<Post> file_posts;
				if (source == SourceSite::dcard)
				{
					DcardBatch batch;
					try
					{
						batch = parse_dcard_export(text);
					}
					catch (const Error& e)
					{
						err << path << ": " << e.what() << "\n";
						failed = true;
						continue;
					}
					for (const auto& r : batch.rejected) err << path << ": " << r.reason << "\n";
					for (const auto& w : batch.warnings) err << path << ": warning: " << w << "\n";
					rejected += batch.rejected.size();
					file_posts = std::move(batch.posts);
				}
				else
				{
					// Several pages are numbered apart so fallback ids stay unique.
					const auto prefix = o.inputs.size() > 1 ? o.id_prefix + std::to_string(f) + "-" : o.id_prefix;
					auto page = parse_weibo_page(text, prefix);
					for (const auto& d : page.diagnostics) err << path << ": " << d << "\n";
					if (page.posts.empty() && !page.diagnostics.empty())
					{
						failed = true;
						continue;
					}
					rejected += page.skipped_blocks;
					file_posts = std::move(page.posts);
				}

				for (auto& p : file_posts)
				{
					if (!ids.insert(p.id).second)
					{
						err << path << ": duplicate post id '" << p.id << "' skipped\n";
						++rejected;
						continue;
					}
					posts.push_back(std::move(p));
				}
			}
			if (failed) return exit_data;

			const auto count = posts.size();
			write_text_file(o.out, Corpus{ std::move(posts) });
			out << "posts=" << count << " rejected=" << rejected << "\n";
			return exit_ok;
		}

		struct TokenizeOptions
		{
			std::string corpus;
			std::string out;
			std::string dict;
			std::string dict_dcard;
			std::string dict_weibo;
			std::string segmenter = "fmm";
			std::string config;
			unsigned threads = 1;
		};

		int run_tokenize(const TokenizeOptions& o, std::ostream& out, std::ostream& err)
		{
			const auto config = load_config(o.config);
			auto corpus = read_corpus(std::filesystem::path{ o.corpus });
			const bool tokenized = std::any_of(corpus.posts().begin(), corpus.posts().end(),
				[](const Post& p) { return !p.tokens.empty(); });
			if (tokenized) err << "warning: " << o.corpus << " is already tokenized; tokens will be overwritten\n";

			std::vector<std::unique_ptr<Tokenizer>> owned;
			std::map<SourceSite, const Tokenizer*> by_source;
			if (o.segmenter == "whitespace")
			{
				owned.push_back(std::make_unique<WhitespaceTokenizer>());
				for (const auto s : all_sources) by_source[s] = owned.back().get();
			}
			else
			{
				std::map<std::string, std::shared_ptr<const Dictionary>> loaded;
				for (const auto s : all_sources)
				{
					const auto key = "segmenter.dict." + std::string{ to_string(s) };
					const auto& flag = s == SourceSite::dcard ? o.dict_dcard : o.dict_weibo;
					auto path = path_setting(flag, config, key);
					if (path.empty()) path = o.dict;
					if (path.empty())
					{
						if (corpus.source_count(s) == 0) continue;
						throw UsageError{ "no dictionary for " + std::string{ to_string(s) } + " posts; pass --dict or --dict-"
							+ std::string{ to_string(s) } };
					}
					auto& dict = loaded[path];
					if (!dict) dict = std::make_shared<const Dictionary>(load_dictionary(path));
					owned.push_back(std::make_unique<FmmTokenizer>(dict));
					by_source[s] = owned.back().get();
				}
			}

			const auto count = corpus.size();
			write_text_file(o.out, tokenize_corpus(std::move(corpus), by_source, o.threads));
			out << "posts=" << count << "\n";
			return exit_ok;
		}

		struct IndexOptions
		{
			std::string corpus;
			std::string tag;
			std::string out;
			std::string script_map;
			std::string config;
			std::size_t lsi_k = 300;
		};

		int run_index(const IndexOptions& o, std::ostream& out, std::ostream& err, bool lsi_k_given)
		{
			const auto config = load_config(o.config);
			const auto normalize = make_normalizer(path_setting(o.script_map, config, "align.script_map"));
			const auto k = lsi_k_given ? o.lsi_k : config.size("lsi.k").value_or(o.lsi_k);
			const Corpus corpus{ posts_of(o.corpus, SourceSite::dcard) };
			const auto pool = pool_by_tag(corpus, o.tag, SourceSite::dcard, normalize);
			if (pool.empty()) throw EmptyPool(SourceSite::dcard);
			warn_untokenized(pool, err);
			const auto space = fit_pool_space(pool, k);
			for (const auto& w : space.warnings) err << "warning: " << w << "\n";
			write_index(space, o.out);
			out << "docs=" << space.index.refs.size() << " terms=" << space.tfidf.vocab.size() << " k_eff=" << space.lsi.k_eff
				<< "\n";
			return exit_ok;
		}

		struct AlignOptions
		{
			std::string tag;
			std::string dcard;
			std::string weibo;
			std::string index;
			std::string script_map;
			std::string config;
			std::string format = "text";
			std::uint64_t seed = 0;
			std::size_t top_n = 10;
			std::size_t lsi_k = 300;
			double threshold = 0;
			bool all = false;
			unsigned threads = 1;
		};

		int run_align(const AlignOptions& o, const CLI::App& cmd, std::ostream& out, std::ostream& err)
		{
			if (o.all && !cmd.count("--threshold")) throw UsageError{ "--all requires --threshold" };
			if (!o.all && cmd.count("--threshold")) throw UsageError{ "--threshold only applies with --all" };
			if (o.all && cmd.count("--seed")) err << "warning: --seed is ignored with --all\n";

			const auto config = load_config(o.config);
			const auto normalize = make_normalizer(path_setting(o.script_map, config, "align.script_map"));
			const auto k = cmd.count("--lsi-k") ? o.lsi_k : config.size("lsi.k").value_or(o.lsi_k);
			const auto corpus = load_pair(o.dcard, o.weibo);
			const auto dcard = pool_by_tag(corpus, o.tag, SourceSite::dcard, normalize);
			const auto weibo = pool_by_tag(corpus, o.tag, SourceSite::weibo, normalize);
			if (dcard.empty()) throw EmptyPool(SourceSite::dcard);
			if (weibo.empty()) throw EmptyPool(SourceSite::weibo);
			warn_untokenized(dcard, err);
			warn_untokenized(weibo, err);

			LatentSpace space;
			if (o.index.empty())
			{
				space = fit_pool_space(dcard, k);
			}
			else
			{
				space = read_index(o.index);
				if (space.index.refs != dcard.refs()) throw Error(o.index + ": index was built for a different Dcard pool");
			}

			if (o.all)
			{
				for (const auto& w : space.warnings) err << "warning: " << w << "\n";
				out << format_alignment_batch(dcard.tag, align_all(weibo, space, o.threshold, o.top_n, o.threads));
				return exit_ok;
			}
			const auto result = align_query(dcard.tag, dcard, weibo, space, o.seed, o.top_n);
			if (format_names.at(o.format) == Format::structured) out << dump(ok_envelope(to_json(result))) << "\n";
			else out << render_text(result);
			return exit_ok;
		}

		struct ReportOptions
		{
			std::string tag;
			std::string dcard;
			std::string weibo;
			std::string lexicon;
			std::string sections = "stats,freq,colloc";
			std::string pivot;
			std::string stoplist;
			std::string script_map;
			std::string config;
			std::string format = "text";
			std::string polarity = "per-post";
			std::size_t min_count = 3;
			std::size_t top_n = 20;
			bool drop_punctuation = false;
		};

		TokenFilter make_filter(bool drop_punctuation, const std::string& stoplist)
		{
			TokenFilter filter;
			filter.drop_punctuation = drop_punctuation;
			if (!stoplist.empty()) filter.stoplist = parse_dictionary(read_file(stoplist)).entries();
			return filter;
		}

		int run_report(const ReportOptions& o, std::ostream& out, std::ostream& err)
		{
			unsigned sections = 0;
			try
			{
				sections = parse_sections(o.sections);
			}
			catch (const Error& e)
			{
				throw UsageError{ e.what() };
			}
			if (o.min_count == 0) throw UsageError{ "--min-count must be at least 1" };
			const auto config = load_config(o.config);
			const auto normalize = make_normalizer(path_setting(o.script_map, config, "align.script_map"));
			const auto corpus = load_pair(o.dcard, o.weibo);
			const auto lexicon = o.lexicon.empty() ? PolarityLexicon{} : load_lexicon(o.lexicon);
			if (o.lexicon.empty()) err << "warning: no --lexicon given; polarity is 0\n";

			CompareParams params;
			params.pivot = o.pivot;
			params.min_count = o.min_count;
			params.freq_top_n = params.colloc_top_n = o.top_n;
			params.filter = make_filter(o.drop_punctuation, o.stoplist);
			params.polarity_mode = polarity_names.at(o.polarity);

			const auto dcard = pool_by_tag(corpus, o.tag, SourceSite::dcard, normalize);
			const auto weibo = pool_by_tag(corpus, o.tag, SourceSite::weibo, normalize);
			const auto report = compare_sites(dcard.tag, dcard, weibo, lexicon, params);
			if (format_names.at(o.format) == Format::structured) out << dump(ok_envelope(to_json(report, sections))) << "\n";
			else out << render_text(report, sections);
			return exit_ok;
		}

		struct ServeOptions
		{
			std::string dcard;
			std::string weibo;
			std::string lexicon;
			std::string dict_dcard;
			std::string dict_weibo;
			std::string script_map;
			std::string stoplist;
			std::string config;
			std::string polarity = "per-post";
			std::string bind = "127.0.0.1:8080";
			std::size_t lsi_k = 300;
			bool drop_punctuation = false;
		};

		int run_serve(const ServeOptions& o, const CLI::App& cmd, std::ostream& out, std::ostream& err)
		{
			const auto [host, port] = parse_bind(o.bind);
			const auto config = load_config(o.config);
			auto corpus = load_pair(o.dcard, o.weibo);

			std::vector<std::unique_ptr<Tokenizer>> owned;
			std::map<SourceSite, const Tokenizer*> by_source;
			for (const auto s : all_sources)
			{
				const auto path = path_setting(s == SourceSite::dcard ? o.dict_dcard : o.dict_weibo, config,
					"segmenter.dict." + std::string{ to_string(s) });
				if (path.empty()) continue;
				owned.push_back(std::make_unique<FmmTokenizer>(std::make_shared<const Dictionary>(load_dictionary(path))));
				by_source[s] = owned.back().get();
			}
			if (!by_source.empty()) corpus = tokenize_corpus(std::move(corpus), by_source);

			ServiceConfig sc;
			sc.lsi_k = cmd.count("--lsi-k") ? o.lsi_k : config.size("lsi.k").value_or(o.lsi_k);
			sc.normalizer = make_normalizer(path_setting(o.script_map, config, "align.script_map"));
			sc.polarity_mode = polarity_names.at(o.polarity);
			sc.filter = make_filter(o.drop_punctuation, o.stoplist);
			const ServiceState state{ std::move(corpus), o.lexicon.empty() ? PolarityLexicon{} : load_lexicon(o.lexicon),
				std::move(sc) };
			if (o.lexicon.empty()) err << "warning: no --lexicon given; polarity is 0\n";

			Server server{ state };
			const auto bound = server.bind(host, port);
			out << "listening on " << host << ":" << bound << std::endl;
			server.listen();
			return exit_ok;
		}
	}

	int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
	{
		CLI::App app{ "Comparable-corpus tools for Dcard and Weibo posts", "varcorp" };
		app.require_subcommand(1);
		app.set_version_flag("--version", "varcorp 0.1.0");

		const auto path_exists = CLI::ExistingFile;
		const auto sources = CLI::IsMember({ "dcard", "weibo" });
		const auto formats = CLI::IsMember({ "text", "structured" });
		const auto polarity = CLI::IsMember({ "per-post", "pooled" });

		IngestOptions ingest;
		auto* ingest_cmd = app.add_subcommand("ingest", "Convert Dcard exports or saved Weibo pages into a corpus file");
		ingest_cmd->add_option("--source", ingest.source, "Input format")->required()->check(sources);
		ingest_cmd->add_option("--in", ingest.inputs, "Input files")->required();
		ingest_cmd->add_option("--out", ingest.out, "Corpus file to write")->required();
		ingest_cmd->add_option("--id-prefix", ingest.id_prefix, "Prefix for Weibo posts without an id")
			->capture_default_str();

		TokenizeOptions tokenize;
		auto* tokenize_cmd = app.add_subcommand("tokenize", "Segment the cleaned text of every post");
		tokenize_cmd->add_option("--corpus", tokenize.corpus, "Corpus file to read")->required();
		tokenize_cmd->add_option("--out", tokenize.out, "Corpus file to write")->required();
		tokenize_cmd->add_option("--dict", tokenize.dict, "Dictionary for every source");
		tokenize_cmd->add_option("--dict-dcard", tokenize.dict_dcard, "Dictionary for Dcard posts");
		tokenize_cmd->add_option("--dict-weibo", tokenize.dict_weibo, "Dictionary for Weibo posts");
		tokenize_cmd->add_option("--segmenter", tokenize.segmenter, "fmm, or whitespace for pre-segmented text")
			->check(CLI::IsMember({ "fmm", "whitespace" }))
			->capture_default_str();
		tokenize_cmd->add_option("--threads", tokenize.threads, "Worker threads")->check(CLI::PositiveNumber)
			->capture_default_str();
		tokenize_cmd->add_option("--config", tokenize.config, "JSON config file")->check(path_exists);

		IndexOptions index;
		auto* index_cmd = app.add_subcommand("index", "Fit and save the latent space of one tag's Dcard pool");
		index_cmd->add_option("--corpus", index.corpus, "Tokenized Dcard corpus")->required();
		index_cmd->add_option("--tag", index.tag, "Topic tag")->required();
		index_cmd->add_option("--out", index.out, "Index directory")->required();
		index_cmd->add_option("--lsi-k", index.lsi_k, "Requested LSI dimensions")->capture_default_str();
		index_cmd->add_option("--script-map", index.script_map, "Tag character mapping file");
		index_cmd->add_option("--config", index.config, "JSON config file")->check(path_exists);

		AlignOptions align;
		auto* align_cmd = app.add_subcommand("align", "Rank Dcard posts against Weibo posts sharing a tag");
		align_cmd->add_option("--tag", align.tag, "Topic tag")->required();
		align_cmd->add_option("--dcard", align.dcard, "Tokenized Dcard corpus")->required();
		align_cmd->add_option("--weibo", align.weibo, "Tokenized Weibo corpus")->required();
		align_cmd->add_option("--seed", align.seed, "Anchor selection seed")->capture_default_str();
		align_cmd->add_option("--top-n", align.top_n, "Ranked posts to keep")->capture_default_str();
		align_cmd->add_option("--lsi-k", align.lsi_k, "Requested LSI dimensions")->capture_default_str();
		align_cmd->add_option("--index", align.index, "Saved index directory instead of fitting");
		align_cmd->add_flag("--all", align.all, "Pair every Weibo post instead of one random anchor");
		align_cmd->add_option("--threshold", align.threshold, "Minimum similarity for --all")->check(CLI::Range(-1.0, 1.0));
		align_cmd->add_option("--threads", align.threads, "Worker threads for --all")->check(CLI::PositiveNumber)
			->capture_default_str();
		align_cmd->add_option("--format", align.format, "Output format")->check(formats)->capture_default_str();
		align_cmd->add_option("--script-map", align.script_map, "Tag character mapping file");
		align_cmd->add_option("--config", align.config, "JSON config file")->check(path_exists);

		ReportOptions report;
		auto* report_cmd = app.add_subcommand("report", "Quick statistics, frequency lists and collocations for a tag");
		report_cmd->add_option("--tag", report.tag, "Topic tag")->required();
		report_cmd->add_option("--dcard", report.dcard, "Tokenized Dcard corpus")->required();
		report_cmd->add_option("--weibo", report.weibo, "Tokenized Weibo corpus")->required();
		report_cmd->add_option("--lexicon", report.lexicon, "Polarity lexicon");
		report_cmd->add_option("--sections", report.sections, "Comma-separated: stats, freq, colloc")
			->capture_default_str();
		report_cmd->add_option("--pivot", report.pivot, "Collocation pivot (default: the tag)");
		report_cmd->add_option("--min-count", report.min_count, "Minimum bigram count")->capture_default_str();
		report_cmd->add_option("--top-n", report.top_n, "Rows per list")->capture_default_str();
		report_cmd->add_option("--polarity", report.polarity, "Polarity averaging")->check(polarity)->capture_default_str();
		report_cmd->add_flag("--drop-punctuation", report.drop_punctuation, "Ignore punctuation tokens");
		report_cmd->add_option("--stoplist", report.stoplist, "Tokens to ignore, one per line");
		report_cmd->add_option("--format", report.format, "Output format")->check(formats)->capture_default_str();
		report_cmd->add_option("--script-map", report.script_map, "Tag character mapping file");
		report_cmd->add_option("--config", report.config, "JSON config file")->check(path_exists);

		ServeOptions serve;
		auto* serve_cmd = app.add_subcommand("serve", "Serve the read-only HTTP API");
		serve_cmd->add_option("--dcard", serve.dcard, "Dcard corpus")->required();
		serve_cmd->add_option("--weibo", serve.weibo, "Weibo corpus")->required();
		serve_cmd->add_option("--lexicon", serve.lexicon, "Polarity lexicon");
		serve_cmd->add_option("--dict-dcard", serve.dict_dcard, "Re-tokenize Dcard posts with this dictionary");
		serve_cmd->add_option("--dict-weibo", serve.dict_weibo, "Re-tokenize Weibo posts with this dictionary");
		serve_cmd->add_option("--lsi-k", serve.lsi_k, "Requested LSI dimensions")->capture_default_str();
		serve_cmd->add_option("--bind", serve.bind, "host:port")->capture_default_str();
		serve_cmd->add_option("--polarity", serve.polarity, "Polarity averaging")->check(polarity)->capture_default_str();
		serve_cmd->add_flag("--drop-punctuation", serve.drop_punctuation, "Ignore punctuation tokens");
		serve_cmd->add_option("--stoplist", serve.stoplist, "Tokens to ignore, one per line");
		serve_cmd->add_option("--script-map", serve.script_map, "Tag character mapping file");
		serve_cmd->add_option("--config", serve.config, "JSON config file")->check(path_exists);

		try
		{
			std::vector<std::string> reversed(args.rbegin(), args.rend());
			app.parse(reversed);
		}
		catch (const CLI::ParseError& e)
		{
			const int code = app.exit(e, out, err);
			return code == 0 ? exit_ok : exit_usage;
		}

		try
		{
			if (*ingest_cmd) return run_ingest(ingest, out, err);
			if (*tokenize_cmd) return run_tokenize(tokenize, out, err);
			if (*index_cmd) return run_index(index, out, err, index_cmd->count("--lsi-k") > 0);
			if (*align_cmd) return run_align(align, *align_cmd, out, err);
			if (*report_cmd) return run_report(report, out, err);
			if (*serve_cmd) return run_serve(serve, *serve_cmd, out, err);
		}
		catch (const UsageError& e)
		{
			err << "error: " << e.message << "\n";
			return exit_usage;
		}
		catch (const std::exception& e)
		{
			err << "error: " << e.what() << "\n";
			return exit_data;
		}
		return exit_usage;
	}
}
