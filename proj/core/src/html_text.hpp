#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace varcorp::detail
{
	struct HtmlBlock
	{
		std::map<std::string, std::string> attrs;
		// Visible text of the block's text region; empty optional when the block has none.
		std::optional<std::string> text;
	};

	struct HtmlScan
	{
		bool ok = true;
		std::string diagnostic;
		std::vector<HtmlBlock> blocks;
	};

	/// Finds top-level elements carrying class `post` and extracts their visible text.
	HtmlScan scan_post_blocks(std::string_view html);

	/// Decodes named (amp, lt, gt, quot, apos, nbsp) and numeric character references.
	/// Unknown references are left untouched.
	std::string decode_entities(std::string_view s);
}
