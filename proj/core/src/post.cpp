#include <varcorp/post.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>

namespace varcorp
{
	std::string_view to_string(SourceSite s) noexcept
	{
		return s == SourceSite::dcard ? "dcard" : "weibo";
	}

	std::optional<SourceSite> parse_source(std::string_view s) noexcept
	{
		if (s == "dcard") return SourceSite::dcard;
		if (s == "weibo") return SourceSite::weibo;
		return std::nullopt;
	}

	std::string_view to_string(Gender g) noexcept
	{
		switch (g)
		{
		case Gender::male: return "male";
		case Gender::female: return "female";
		default: return "unknown";
		}
	}

	std::optional<Gender> parse_gender(std::string_view s) noexcept
	{
		if (s == "male") return Gender::male;
		if (s == "female") return Gender::female;
		if (s == "unknown") return Gender::unknown;
		return std::nullopt;
	}

	std::string format_rfc3339(Timestamp t)
	{
		using namespace std::chrono;
		const auto day = floor<days>(t);
		const year_month_day ymd{ day };
		const hh_mm_ss hms{ t - day };
		char buf[32];
		std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ",
			static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
			static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
			static_cast<int>(hms.seconds().count()));
		return buf;
	}

	namespace
	{
		bool read_int(std::string_view s, std::size_t pos, std::size_t width, int& out)
		{
			if (pos + width > s.size()) return false;
			for (std::size_t i = pos; i < pos + width; ++i)
			{
				if (s[i] < '0' || s[i] > '9') return false;
			}
			std::from_chars(s.data() + pos, s.data() + pos + width, out);
			return true;
		}
	}

	std::optional<Timestamp> parse_timestamp(std::string_view s, std::chrono::minutes default_offset)
	{
		using namespace std::chrono;
		int y, mo, d, h, mi, sec;
		if (!read_int(s, 0, 4, y) || s.size() < 19 || s[4] != '-' || !read_int(s, 5, 2, mo) || s[7] != '-'
			|| !read_int(s, 8, 2, d) || (s[10] != 'T' && s[10] != 't' && s[10] != ' ')
			|| !read_int(s, 11, 2, h) || s[13] != ':' || !read_int(s, 14, 2, mi) || s[16] != ':'
			|| !read_int(s, 17, 2, sec))
		{
			return std::nullopt;
		}
		const year_month_day ymd{ year{ y }, month{ static_cast<unsigned>(mo) }, day{ static_cast<unsigned>(d) } };
		if (!ymd.ok() || h > 23 || mi > 59 || sec > 60) return std::nullopt;

		std::size_t pos = 19;
		if (pos < s.size() && s[pos] == '.')
		{
			++pos;
			const auto start = pos;
			while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
			if (pos == start) return std::nullopt;
		}

		minutes offset = default_offset;
		if (pos < s.size())
		{
			const char c = s[pos];
			if ((c == 'Z' || c == 'z') && pos + 1 == s.size())
			{
				offset = minutes{ 0 };
			}
			else if ((c == '+' || c == '-') && pos + 6 == s.size() && s[pos + 3] == ':')
			{
				int oh, om;
				if (!read_int(s, pos + 1, 2, oh) || !read_int(s, pos + 4, 2, om) || oh > 23 || om > 59) return std::nullopt;
				offset = minutes{ oh * 60 + om };
				if (c == '-') offset = -offset;
			}
			else
			{
				return std::nullopt;
			}
		}

		const auto local = sys_days{ ymd } + hours{ h } + minutes{ mi } + seconds{ sec };
		return time_point_cast<seconds>(local - offset);
	}

	std::size_t Corpus::source_count(SourceSite s) const noexcept
	{
		return static_cast<std::size_t>(std::count_if(posts_.begin(), posts_.end(),
			[s](const Post& p) { return p.source == s; }));
	}
}
