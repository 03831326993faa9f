#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace varcorp::utf8
{
	/// One decoded code point and the number of bytes it occupies in the source.
	/// Invalid or truncated sequences decode to U+FFFD with a length of one byte,
	/// so a scan always advances and never drops input bytes.
	struct CodePoint
	{
		char32_t value;
		std::size_t length;
	};

	CodePoint decode(std::string_view s, std::size_t pos) noexcept;

	void append(std::string& out, char32_t cp);

	/// Number of code points (not bytes).
	std::size_t length(std::string_view s) noexcept;

	/// Byte offsets of each code point start, plus a final entry equal to s.size().
	std::vector<std::size_t> boundaries(std::string_view s);

	/// ASCII whitespace, NO-BREAK SPACE and IDEOGRAPHIC SPACE.
	bool is_space(char32_t cp) noexcept;

	/// Han ideographs, CJK punctuation, kana, bopomofo and fullwidth forms.
	bool is_cjk(char32_t cp) noexcept;

	/// ASCII letters and digits; runs of these form a single token when segmenting.
	inline bool is_ascii_alnum(char32_t cp) noexcept
	{
		return (cp >= U'0' && cp <= U'9') || (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
	}

	/// Unicode punctuation and symbols commonly found in CJK and ASCII text.
	bool is_punctuation(char32_t cp) noexcept;

	std::string ascii_lower(std::string_view s);

	/// Strips leading and trailing characters for which is_space holds.
	std::string_view trim(std::string_view s) noexcept;
}
