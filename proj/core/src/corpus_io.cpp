#include <varcorp/ingest.hpp>

#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <varcorp/error.hpp>

namespace varcorp
{
	namespace
	{
		const std::set<std::string, std::less<>> known_fields{ "id", "source", "raw_text", "text", "tags", "gender",
			"created_at", "likes", "comments", "school", "department", "followers", "screen_name", "tokens" };

		std::string required_string(const nlohmann::json& r, const char* key, std::size_t line_no)
		{
			const auto it = r.find(key);
			if (it == r.end() || !it->is_string()) throw SchemaViolation(line_no, std::string{ "field '" } + key + "' must be a string");
			return it->get<std::string>();
		}

		std::vector<std::string> string_list(const nlohmann::json& r, const char* key, std::size_t line_no)
		{
			const auto it = r.find(key);
			if (it == r.end()) return {};
			if (!it->is_array()) throw SchemaViolation(line_no, std::string{ "field '" } + key + "' must be an array");
			std::vector<std::string> out;
			out.reserve(it->size());
			for (const auto& v : *it)
			{
				if (!v.is_string()) throw SchemaViolation(line_no, std::string{ "field '" } + key + "' must contain strings");
				out.push_back(v.get<std::string>());
			}
			return out;
		}

		std::optional<std::string> optional_string(const nlohmann::json& r, const char* key, std::size_t line_no)
		{
			const auto it = r.find(key);
			if (it == r.end()) return std::nullopt;
			if (!it->is_string()) throw SchemaViolation(line_no, std::string{ "field '" } + key + "' must be a string");
			return it->get<std::string>();
		}

		std::optional<std::uint64_t> optional_count(const nlohmann::json& r, const char* key, std::size_t line_no)
		{
			const auto it = r.find(key);
			if (it == r.end()) return std::nullopt;
			if (it->is_number_unsigned()) return it->get<std::uint64_t>();
			if (it->is_number_integer() && it->get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(it->get<std::int64_t>());
			throw SchemaViolation(line_no, std::string{ "field '" } + key + "' must be a non-negative integer");
		}
	}

	nlohmann::ordered_json post_to_json(const Post& post)
	{
		nlohmann::ordered_json j;
		j["id"] = post.id;
		j["source"] = to_string(post.source);
		j["raw_text"] = post.raw_text;
		j["text"] = post.text;
		j["tags"] = post.tags;
		j["gender"] = to_string(post.gender);
		if (post.created_at) j["created_at"] = format_rfc3339(*post.created_at);
		if (post.likes) j["likes"] = *post.likes;
		if (post.comments) j["comments"] = *post.comments;
		if (post.school) j["school"] = *post.school;
		if (post.department) j["department"] = *post.department;
		if (post.followers) j["followers"] = *post.followers;
		if (post.screen_name) j["screen_name"] = *post.screen_name;
		j["tokens"] = post.tokens;
		return j;
	}

	Post post_from_json(const nlohmann::json& r, std::size_t line_no)
	{
		if (!r.is_object()) throw SchemaViolation(line_no, "record must be an object");
		for (const auto& [key, value] : r.items())
		{
			if (!known_fields.contains(key)) throw SchemaViolation(line_no, "unknown field '" + key + "'");
		}

		Post p;
		p.id = required_string(r, "id", line_no);
		if (p.id.empty()) throw SchemaViolation(line_no, "empty id");
		const auto source = parse_source(required_string(r, "source", line_no));
		if (!source) throw SchemaViolation(line_no, "unknown source");
		p.source = *source;
		p.raw_text = required_string(r, "raw_text", line_no);
		p.text = required_string(r, "text", line_no);
		p.tags = string_list(r, "tags", line_no);
		const auto gender = parse_gender(required_string(r, "gender", line_no));
		if (!gender) throw SchemaViolation(line_no, "gender must be male, female or unknown");
		p.gender = *gender;
		if (auto ts = optional_string(r, "created_at", line_no))
		{
			p.created_at = parse_timestamp(*ts, std::chrono::minutes{ 0 });
			if (!p.created_at) throw SchemaViolation(line_no, "created_at is not RFC 3339");
		}
		p.likes = optional_count(r, "likes", line_no);
		p.comments = optional_count(r, "comments", line_no);
		p.school = optional_string(r, "school", line_no);
		p.department = optional_string(r, "department", line_no);
		p.followers = optional_count(r, "followers", line_no);
		p.screen_name = optional_string(r, "screen_name", line_no);
		p.tokens = string_list(r, "tokens", line_no);
		return p;
	}

	void write_corpus(const Corpus& corpus, std::ostream& out)
	{
		for (const auto& post : corpus.posts())
		{
			out << post_to_json(post).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
		}
	}

	void write_corpus(const Corpus& corpus, const std::filesystem::path& path)
	{
		std::ofstream out{ path, std::ios::binary };
		if (!out) throw IoError(path.string(), "cannot open for writing");
		write_corpus(corpus, out);
		out.flush();
		if (!out) throw IoError(path.string(), "write failed");
	}

	Corpus read_corpus(std::istream& in)
	{
		std::vector<Post> posts;
		std::set<std::pair<std::string, SourceSite>> seen;
		std::string line;
		std::size_t line_no = 0;
		while (std::getline(in, line))
		{
			++line_no;
			if (!line.empty() && line.back() == '\r') line.pop_back();
			if (line.find_first_not_of(" \t") == std::string::npos) continue;
			auto record = nlohmann::json::parse(line, nullptr, false);
			if (record.is_discarded()) throw SchemaViolation(line_no, "malformed JSON");
			auto post = post_from_json(record, line_no);
			if (!seen.emplace(post.id, post.source).second)
			{
				throw SchemaViolation(line_no, "duplicate post id '" + post.id + "'");
			}
			posts.push_back(std::move(post));
		}
		return Corpus{ std::move(posts) };
	}

	Corpus read_corpus(const std::filesystem::path& path)
	{
		std::ifstream in{ path, std::ios::binary };
		if (!in) throw IoError(path.string(), "cannot open for reading");
		try
		{
			return read_corpus(in);
		}
		catch (const SchemaViolation& e)
		{
			throw SchemaViolation(e.line_no(), e.detail(), path.string());
		}
	}

	std::string read_file(const std::filesystem::path& path)
	{
		std::ifstream in{ path, std::ios::binary };
		if (!in) throw IoError(path.string(), "cannot open for reading");
		std::ostringstream ss;
		ss << in.rdbuf();
		if (in.bad()) throw IoError(path.string(), "read failed");
		return ss.str();
	}
}
