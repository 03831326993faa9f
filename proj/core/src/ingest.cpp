#include <varcorp/ingest.hpp>

#include <algorithm>
#include <cstring>

#include <varcorp/error.hpp>
#include <varcorp/utf8.hpp>

#include "html_text.hpp"

namespace varcorp
{
	namespace
	{
		bool starts_with_icase(std::string_view s, std::size_t pos, std::string_view prefix) noexcept
		{
			if (s.size() - pos < prefix.size()) return false;
			for (std::size_t i = 0; i < prefix.size(); ++i)
			{
				char c = s[pos + i];
				if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
				if (c != prefix[i]) return false;
			}
			return true;
		}

		bool url_starts_at(std::string_view s, std::size_t pos) noexcept
		{
			return starts_with_icase(s, pos, "http://") || starts_with_icase(s, pos, "https://")
				|| starts_with_icase(s, pos, "www.");
		}

		std::size_t skip_url(std::string_view s, std::size_t pos) noexcept
		{
			while (pos < s.size())
			{
				const auto cp = utf8::decode(s, pos);
				if (utf8::is_space(cp.value) || utf8::is_cjk(cp.value)) break;
				pos += cp.length;
			}
			return pos;
		}

		std::size_t skip_space(std::string_view s, std::size_t pos) noexcept
		{
			while (pos < s.size())
			{
				const auto cp = utf8::decode(s, pos);
				if (!utf8::is_space(cp.value)) break;
				pos += cp.length;
			}
			return pos;
		}

		void push_unique(std::vector<std::string>& tags, std::string tag)
		{
			if (std::find(tags.begin(), tags.end(), tag) == tags.end()) tags.push_back(std::move(tag));
		}

		/// Metadata tags: trimmed, '#' removed, empty and duplicate entries dropped.
		std::vector<std::string> clean_tags(const std::vector<std::string>& raw)
		{
			std::vector<std::string> out;
			for (const auto& t : raw)
			{
				std::string s;
				for (char c : t)
				{
					if (c != '#') s.push_back(c);
				}
				auto trimmed = utf8::trim(s);
				if (!trimmed.empty()) push_unique(out, std::string{ trimmed });
			}
			return out;
		}

		std::optional<std::uint64_t> json_count(const nlohmann::json& v)
		{
			if (v.is_number_unsigned()) return v.get<std::uint64_t>();
			if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
			return std::nullopt;
		}

		std::optional<std::uint64_t> parse_count(std::string_view s)
		{
			s = utf8::trim(s);
			if (s.empty()) return std::nullopt;
			std::uint64_t v = 0;
			for (char c : s)
			{
				if (c < '0' || c > '9') return std::nullopt;
				v = v * 10 + static_cast<std::uint64_t>(c - '0');
			}
			return v;
		}

		Gender gender_from_code(std::string_view s) noexcept
		{
			if (s == "M" || s == "m" || s == "male") return Gender::male;
			if (s == "F" || s == "f" || s == "female") return Gender::female;
			return Gender::unknown;
		}
	}

	std::string strip_urls(std::string_view text)
	{
		std::string out;
		out.reserve(text.size());
		// Byte length of `out` before its trailing whitespace run.
		std::size_t out_content_end = 0;
		std::size_t pos = 0;
		while (pos < text.size())
		{
			if (!url_starts_at(text, pos))
			{
				const auto cp = utf8::decode(text, pos);
				out.append(text.substr(pos, cp.length));
				if (!utf8::is_space(cp.value)) out_content_end = out.size();
				pos += cp.length;
				continue;
			}

			bool had_space = out.size() > out_content_end;
			out.resize(out_content_end);
			for (;;)
			{
				pos = skip_url(text, pos);
				const auto after = skip_space(text, pos);
				had_space = had_space || after > pos;
				pos = after;
				if (pos >= text.size() || !url_starts_at(text, pos)) break;
			}
			if (had_space && !out.empty() && pos < text.size())
			{
				out.push_back(' ');
			}
		}
		return out;
	}

	HashtagSplit extract_hashtags(std::string_view text)
	{
		std::vector<std::size_t> markers;
		for (std::size_t i = 0; i < text.size(); ++i)
		{
			if (text[i] == '#') markers.push_back(i);
		}

		HashtagSplit result;
		result.cleaned.reserve(text.size());
		std::size_t last = 0;
		const std::size_t paired = markers.size() & ~std::size_t{ 1 };
		for (std::size_t m = 0; m < paired; m += 2)
		{
			const auto open = markers[m], close = markers[m + 1];
			result.cleaned.append(text.substr(last, open - last));
			const auto inner = text.substr(open + 1, close - open - 1);
			result.cleaned.append(inner);
			const auto tag = utf8::trim(inner);
			if (!tag.empty()) result.tags.emplace_back(tag);
			last = close + 1;
		}
		result.cleaned.append(text.substr(last));
		return result;
	}

	Post parse_dcard_record(const nlohmann::json& record, std::size_t index, std::vector<std::string>& warnings)
	{
		if (!record.is_object()) throw MissingField("id", index);

		Post post;
		post.source = SourceSite::dcard;

		const auto id = record.find("id");
		if (id == record.end()) throw MissingField("id", index);
		if (id->is_string()) post.id = id->get<std::string>();
		else if (id->is_number_integer()) post.id = std::to_string(id->get<std::int64_t>());
		else throw MissingField("id", index);
		if (post.id.empty()) throw MissingField("id", index);

		const auto content = record.find("content");
		if (content == record.end() || !content->is_string()) throw MissingField("content", index);
		post.raw_text = content->get<std::string>();
		// Markers are cleaned from the body, but Dcard tags only ever come from metadata.
		post.text = extract_hashtags(strip_urls(post.raw_text)).cleaned;

		if (const auto tags = record.find("tags"); tags != record.end() && tags->is_array())
		{
			std::vector<std::string> raw;
			for (const auto& t : *tags)
			{
				if (t.is_string()) raw.push_back(t.get<std::string>());
			}
			post.tags = clean_tags(raw);
		}

		if (const auto g = record.find("gender"); g != record.end() && g->is_string())
		{
			post.gender = gender_from_code(g->get<std::string>());
		}
		if (const auto v = record.find("school"); v != record.end() && v->is_string()) post.school = v->get<std::string>();
		if (const auto v = record.find("department"); v != record.end() && v->is_string()) post.department = v->get<std::string>();
		if (const auto v = record.find("likeCount"); v != record.end()) post.likes = json_count(*v);
		if (const auto v = record.find("commentCount"); v != record.end()) post.comments = json_count(*v);
		if (const auto v = record.find("createdAt"); v != record.end())
		{
			if (v->is_string()) post.created_at = parse_timestamp(v->get<std::string>());
			if (!post.created_at)
			{
				warnings.push_back("record " + std::to_string(index) + ": malformed createdAt");
			}
		}
		return post;
	}

	Post parse_dcard_record(const nlohmann::json& record, std::size_t index)
	{
		std::vector<std::string> ignored;
		return parse_dcard_record(record, index, ignored);
	}

	DcardBatch parse_dcard_export(std::string_view text)
	{
		DcardBatch batch;
		auto add = [&batch](const nlohmann::json& record, std::size_t index)
		{
			try
			{
				batch.posts.push_back(parse_dcard_record(record, index, batch.warnings));
			}
			catch (const MissingField& e)
			{
				batch.rejected.push_back({ index, e.what() });
			}
		};

		const auto body = utf8::trim(text);
		if (body.empty()) return batch;
		if (body.front() == '[')
		{
			nlohmann::json all;
			try
			{
				all = nlohmann::json::parse(body);
			}
			catch (const nlohmann::json::parse_error& e)
			{
				throw Error(std::string{ "malformed Dcard export: " } + e.what());
			}
			for (std::size_t i = 0; i < all.size(); ++i) add(all[i], i);
			return batch;
		}

		std::size_t index = 0;
		std::size_t pos = 0;
		while (pos < text.size())
		{
			auto eol = text.find('\n', pos);
			if (eol == std::string_view::npos) eol = text.size();
			const auto line = utf8::trim(text.substr(pos, eol - pos));
			pos = eol + 1;
			if (line.empty()) continue;
			auto record = nlohmann::json::parse(line, nullptr, false);
			if (record.is_discarded())
			{
				batch.rejected.push_back({ index, "record " + std::to_string(index) + ": malformed JSON" });
			}
			else
			{
				add(record, index);
			}
			++index;
		}
		return batch;
	}

	WeiboPage parse_weibo_page(std::string_view html, std::string_view id_prefix)
	{
		WeiboPage page;
		auto scan = detail::scan_post_blocks(html);
		if (!scan.ok)
		{
			page.diagnostics.push_back("unparseable HTML: " + scan.diagnostic);
			return page;
		}

		for (std::size_t n = 0; n < scan.blocks.size(); ++n)
		{
			auto& block = scan.blocks[n];
			if (!block.text)
			{
				++page.skipped_blocks;
				page.diagnostics.push_back("block " + std::to_string(n) + ": no text region");
				continue;
			}

			Post post;
			post.source = SourceSite::weibo;
			auto attr = [&block](const char* name) -> const std::string*
			{
				const auto it = block.attrs.find(name);
				return it == block.attrs.end() ? nullptr : &it->second;
			};

			if (const auto* id = attr("data-id"); id && !id->empty()) post.id = *id;
			else if (const auto* mid = attr("mid"); mid && !mid->empty()) post.id = *mid;
			else post.id = std::string{ id_prefix } + std::to_string(n);

			post.raw_text = std::string{ utf8::trim(*block.text) };
			auto split = extract_hashtags(strip_urls(post.raw_text));
			post.text = std::move(split.cleaned);
			for (auto& t : split.tags) push_unique(post.tags, std::move(t));

			if (const auto* g = attr("data-gender")) post.gender = gender_from_code(*g);
			if (const auto* v = attr("data-likes")) post.likes = parse_count(*v);
			if (const auto* v = attr("data-comments")) post.comments = parse_count(*v);
			if (const auto* v = attr("data-followers")) post.followers = parse_count(*v);
			if (const auto* v = attr("data-screen-name"); v && !v->empty()) post.screen_name = *v;
			if (const auto* v = attr("data-created-at"))
			{
				post.created_at = parse_timestamp(*v);
				if (!post.created_at) page.diagnostics.push_back("block " + std::to_string(n) + ": malformed data-created-at");
			}
			page.posts.push_back(std::move(post));
		}
		return page;
	}
}
