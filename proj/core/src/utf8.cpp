#include <varcorp/utf8.hpp>

namespace varcorp::utf8
{
	namespace
	{
		constexpr CodePoint invalid{ 0xFFFD, 1 };

		bool is_cont(unsigned char c) noexcept { return (c & 0xC0) == 0x80; }
	}

	CodePoint decode(std::string_view s, std::size_t pos) noexcept
	{
		const auto n = s.size() - pos;
		const auto b0 = static_cast<unsigned char>(s[pos]);
		if (b0 < 0x80) return { b0, 1 };

		std::size_t len;
		char32_t cp;
		if ((b0 & 0xE0) == 0xC0) { len = 2; cp = b0 & 0x1F; }
		else if ((b0 & 0xF0) == 0xE0) { len = 3; cp = b0 & 0x0F; }
		else if ((b0 & 0xF8) == 0xF0) { len = 4; cp = b0 & 0x07; }
		else return invalid;

		if (n < len) return invalid;
		for (std::size_t i = 1; i < len; ++i)
		{
			const auto b = static_cast<unsigned char>(s[pos + i]);
			if (!is_cont(b)) return invalid;
			cp = (cp << 6) | (b & 0x3F);
		}
		// overlong forms, surrogates and out-of-range values
		if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000)) return invalid;
		if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return invalid;
		return { cp, len };
	}

	void append(std::string& out, char32_t cp)
	{
		if (cp < 0x80)
		{
			out.push_back(static_cast<char>(cp));
		}
		else if (cp < 0x800)
		{
			out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
			out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
		}
		else if (cp < 0x10000)
		{
			out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
			out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
			out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
		}
		else
		{
			out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
			out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
			out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
			out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
		}
	}

	std::size_t length(std::string_view s) noexcept
	{
		std::size_t count = 0;
		for (std::size_t pos = 0; pos < s.size(); pos += decode(s, pos).length) ++count;
		return count;
	}

	std::vector<std::size_t> boundaries(std::string_view s)
	{
		std::vector<std::size_t> out;
		out.reserve(s.size() + 1);
		for (std::size_t pos = 0; pos < s.size(); pos += decode(s, pos).length) out.push_back(pos);
		out.push_back(s.size());
		return out;
	}

	bool is_space(char32_t cp) noexcept
	{
		switch (cp)
		{
		case U' ': case U'\t': case U'\n': case U'\v': case U'\f': case U'\r':
		case 0x00A0: case 0x3000:
			return true;
		default:
			return false;
		}
	}

	bool is_cjk(char32_t cp) noexcept
	{
		return (cp >= 0x2E80 && cp <= 0x2FDF)      // radicals
			|| (cp >= 0x3000 && cp <= 0x303F)      // CJK symbols and punctuation
			|| (cp >= 0x3040 && cp <= 0x31FF)      // kana, bopomofo
			|| (cp >= 0x3400 && cp <= 0x4DBF)      // extension A
			|| (cp >= 0x4E00 && cp <= 0x9FFF)      // unified ideographs
			|| (cp >= 0xF900 && cp <= 0xFAFF)      // compatibility ideographs
			|| (cp >= 0xFE30 && cp <= 0xFE4F)      // compatibility forms
			|| (cp >= 0xFF00 && cp <= 0xFFEF)      // halfwidth and fullwidth forms
			|| (cp >= 0x20000 && cp <= 0x2FA1F);   // supplementary ideographs
	}

	bool is_punctuation(char32_t cp) noexcept
	{
		if (cp < 0x80)
		{
			return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40)
				|| (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
		}
		return (cp >= 0x2000 && cp <= 0x206F)      // general punctuation
			|| (cp >= 0x3000 && cp <= 0x303F)
			|| (cp >= 0xFE30 && cp <= 0xFE4F)
			|| (cp >= 0xFF01 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20)
			|| (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65)
			|| cp == 0x00A1 || cp == 0x00B7 || cp == 0x00BF;
	}

	std::string ascii_lower(std::string_view s)
	{
		std::string out{ s };
		for (auto& c : out)
		{
			if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
		}
		return out;
	}

	std::string_view trim(std::string_view s) noexcept
	{
		std::size_t begin = 0;
		while (begin < s.size())
		{
			auto cp = decode(s, begin);
			if (!is_space(cp.value)) break;
			begin += cp.length;
		}
		std::size_t end = begin;
		for (std::size_t pos = begin; pos < s.size();)
		{
			auto cp = decode(s, pos);
			pos += cp.length;
			if (!is_space(cp.value)) end = pos;
		}
		return s.substr(begin, end - begin);
	}
}
