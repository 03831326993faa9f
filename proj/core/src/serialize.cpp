#include <varcorp/serialize.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <varcorp/error.hpp>
#include <varcorp/ingest.hpp>
#include <varcorp/utf8.hpp>

namespace varcorp
{
	double round_to(double value, int decimals)
	{
		const double scale = std::pow(10.0, decimals);
		const double r = std::round(value * scale) / scale;
		return r == 0 ? 0.0 : r;
	}

	Json to_json(const TagStats& s)
	{
		Json j;
		j["site"] = to_string(s.site);
		j["total_posts"] = s.total_posts;
		j["men"] = s.men;
		j["women"] = s.women;
		j["unknown_gender"] = s.unknown_gender;
		j["avg_post_length"] = s.avg_post_length;
		j["naive_polarity"] = round_to(s.naive_polarity, polarity_decimals);
		return j;
	}

	Json to_json(const FrequencyList& list)
	{
		Json j;
		j["site"] = to_string(list.site);
		auto entries = Json::array();
		for (const auto& [token, count] : list.entries)
		{
			Json e;
			e["token"] = token;
			e["count"] = count;
			entries.push_back(std::move(e));
		}
		j["entries"] = std::move(entries);
		return j;
	}

	Json to_json(const CollocationTable& table)
	{
		Json j;
		j["pivot"] = table.pivot;
		j["min_count"] = table.min_count;
		auto rows = Json::array();
		for (const auto& r : table.rows)
		{
			Json e;
			e["token1"] = r.first;
			e["token2"] = r.second;
			e["count"] = r.count;
			e["pmi"] = round_to(r.pmi, pmi_decimals);
			rows.push_back(std::move(e));
		}
		j["rows"] = std::move(rows);
		return j;
	}

	Json to_json(const AlignmentResult& r)
	{
		Json j;
		j["tag"] = r.tag;
		j["seed"] = r.seed;
		j["anchor"] = post_to_json(r.anchor);
		auto ranked = Json::array();
		for (const auto& s : r.ranked)
		{
			Json e;
			e["post"] = post_to_json(s.post);
			e["similarity"] = round_to(s.similarity, similarity_decimals);
			ranked.push_back(std::move(e));
		}
		j["ranked"] = std::move(ranked);
		Json info;
		info["k"] = r.model_info.k;
		info["k_eff"] = r.model_info.k_eff;
		info["dcard_pool_size"] = r.model_info.dcard_pool_size;
		info["weibo_pool_size"] = r.model_info.weibo_pool_size;
		info["warnings"] = r.model_info.warnings;
		j["model_info"] = std::move(info);
		return j;
	}

	unsigned parse_sections(std::string_view list)
	{
		unsigned sections = 0;
		std::size_t pos = 0;
		while (pos <= list.size())
		{
			auto comma = list.find(',', pos);
			if (comma == std::string_view::npos) comma = list.size();
			const auto name = utf8::trim(list.substr(pos, comma - pos));
			pos = comma + 1;
			if (name.empty()) continue;
			if (name == "stats") sections |= section_stats;
			else if (name == "freq") sections |= section_freq;
			else if (name == "colloc") sections |= section_colloc;
			else if (name == "all") sections |= section_all;
			else throw Error("unknown report section '" + std::string{ name } + "'");
		}
		if (!sections) throw Error("no report section selected");
		return sections;
	}

	Json to_json(const ComparisonReport& report, unsigned sections)
	{
		Json j;
		j["tag"] = report.tag;
		auto pair = [](const Json& dcard, const Json& weibo)
		{
			Json p;
			p["dcard"] = dcard;
			p["weibo"] = weibo;
			return p;
		};
		if (sections & section_stats) j["stats"] = pair(to_json(report.dcard.stats), to_json(report.weibo.stats));
		if (sections & section_freq) j["freq"] = pair(to_json(report.dcard.freq), to_json(report.weibo.freq));
		if (sections & section_colloc) j["colloc"] = pair(to_json(report.dcard.colloc), to_json(report.weibo.colloc));
		return j;
	}

	Json ok_envelope(Json data)
	{
		Json j;
		j["ok"] = true;
		j["data"] = std::move(data);
		return j;
	}

	Json error_envelope(std::string_view code, std::string_view message, Json extra)
	{
		Json err;
		err["code"] = code;
		err["message"] = message;
		for (auto& [key, value] : extra.items()) err[key] = value;
		Json j;
		j["ok"] = false;
		j["error"] = std::move(err);
		return j;
	}

	std::string dump(const Json& j)
	{
		return j.dump(-1, ' ', false, Json::error_handler_t::replace);
	}

	std::size_t display_width(std::string_view s)
	{
		std::size_t w = 0;
		for (std::size_t pos = 0; pos < s.size();)
		{
			const auto cp = utf8::decode(s, pos);
			w += utf8::is_cjk(cp.value) ? 2 : 1;
			pos += cp.length;
		}
		return w;
	}

	namespace
	{
		/// Line breaks and tabs become spaces so a post fits in one table row.
		std::string one_line(std::string text)
		{
			for (auto& ch : text)
			{
				if (ch == '\n' || ch == '\r' || ch == '\t') ch = ' ';
			}
			return text;
		}

		std::string fixed(double v, int decimals)
		{
			char buf[64];
			std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
			std::string s{ buf };
			if (s.starts_with('-') && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
			return s;
		}

		std::string pad_right(std::string s, std::size_t width)
		{
			const auto w = display_width(s);
			if (w < width) s.append(width - w, ' ');
			return s;
		}

		std::string pad_left(const std::string& s, std::size_t width)
		{
			const auto w = display_width(s);
			return w < width ? std::string(width - w, ' ') + s : s;
		}

		using Row = std::vector<std::string>;

		/// `align` holds one 'l' or 'r' per column.
		std::vector<std::string> table(const std::vector<Row>& rows, std::string_view align)
		{
			std::vector<std::size_t> widths;
			for (const auto& r : rows)
			{
				widths.resize(std::max(widths.size(), r.size()), 0);
				for (std::size_t c = 0; c < r.size(); ++c) widths[c] = std::max(widths[c], display_width(r[c]));
			}
			std::vector<std::string> lines;
			for (const auto& r : rows)
			{
				std::string line;
				for (std::size_t c = 0; c < r.size(); ++c)
				{
					if (c) line += "  ";
					line += align[c] == 'l' ? pad_right(r[c], widths[c]) : pad_left(r[c], widths[c]);
				}
				while (!line.empty() && line.back() == ' ') line.pop_back();
				lines.push_back(std::move(line));
			}
			return lines;
		}

		std::string side_by_side(const std::vector<std::string>& left, const std::vector<std::string>& right)
		{
			std::size_t width = 0;
			for (const auto& l : left) width = std::max(width, display_width(l));
			std::string out;
			for (std::size_t i = 0; i < std::max(left.size(), right.size()); ++i)
			{
				std::string line = pad_right(i < left.size() ? left[i] : std::string{}, width);
				if (i < right.size()) line += "    " + right[i];
				while (!line.empty() && line.back() == ' ') line.pop_back();
				out += line + "\n";
			}
			return out;
		}

		std::string site_title(SourceSite s) { return s == SourceSite::dcard ? "Dcard" : "Weibo"; }

		std::vector<std::string> freq_block(const FrequencyList& list)
		{
			std::vector<Row> rows{ { "#", "Token", "Frequency" } };
			for (std::size_t i = 0; i < list.entries.size(); ++i)
			{
				rows.push_back({ std::to_string(i + 1), list.entries[i].first, std::to_string(list.entries[i].second) });
			}
			auto lines = table(rows, "rlr");
			lines.insert(lines.begin(), site_title(list.site));
			return lines;
		}

		std::vector<std::string> colloc_block(SourceSite site, const CollocationTable& t)
		{
			std::vector<Row> rows{ { "Token 1", "Token 2", "Count", "PMI" } };
			for (const auto& r : t.rows)
			{
				rows.push_back({ r.first, r.second, std::to_string(r.count), fixed(r.pmi, pmi_decimals) });
			}
			auto lines = table(rows, "llrr");
			lines.insert(lines.begin(), site_title(site));
			return lines;
		}
	}

	std::string render_text(const ComparisonReport& report, unsigned sections)
	{
		std::string out = "Tag: " + report.tag + "\n";
		if (sections & section_stats)
		{
			std::vector<Row> rows{ { "Site", "Total Posts", "Men", "Women", "Unknown", "Avg. Post Length", "Naive Polarity" } };
			for (const auto* s : { &report.dcard.stats, &report.weibo.stats })
			{
				rows.push_back({ site_title(s->site), std::to_string(s->total_posts), std::to_string(s->men),
					std::to_string(s->women), std::to_string(s->unknown_gender), fixed(s->avg_post_length, 1),
					fixed(s->naive_polarity, polarity_decimals) });
			}
			out += "\nQuick statistics\n";
			for (const auto& l : table(rows, "lrrrrrr")) out += l + "\n";
		}
		if (sections & section_freq)
		{
			out += "\nFrequency list\n";
			out += side_by_side(freq_block(report.dcard.freq), freq_block(report.weibo.freq));
		}
		if (sections & section_colloc)
		{
			out += "\nCollocations for " + report.dcard.colloc.pivot + " (min count "
				+ std::to_string(report.dcard.colloc.min_count) + ")\n";
			out += side_by_side(colloc_block(SourceSite::dcard, report.dcard.colloc),
				colloc_block(SourceSite::weibo, report.weibo.colloc));
		}
		return out;
	}

	std::string render_text(const AlignmentResult& r)
	{
		std::string out = "Tag: " + r.tag + "\n";
		out += "Seed: " + std::to_string(r.seed) + "  k: " + std::to_string(r.model_info.k) + "  k_eff: "
			+ std::to_string(r.model_info.k_eff) + "  pools: dcard=" + std::to_string(r.model_info.dcard_pool_size)
			+ " weibo=" + std::to_string(r.model_info.weibo_pool_size) + "\n";
		for (const auto& w : r.model_info.warnings) out += "warning: " + w + "\n";
		out += "Anchor [" + r.anchor.id + "] " + one_line(r.anchor.text) + "\n\n";
		std::vector<Row> rows{ { "Rank", "Similarity", "Dcard post", "Text" } };
		for (std::size_t i = 0; i < r.ranked.size(); ++i)
		{
			rows.push_back({ std::to_string(i + 1), format_similarity(r.ranked[i].similarity), r.ranked[i].post.id,
				one_line(r.ranked[i].post.text) });
		}
		for (const auto& line : table(rows, "rrll")) out += line + "\n";
		return out;
	}
}
