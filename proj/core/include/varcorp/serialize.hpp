#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include <varcorp/align.hpp>
#include <varcorp/analyze.hpp>

namespace varcorp
{
	using Json = nlohmann::ordered_json;

	/// Decimal places used on the wire and in text reports.
	inline constexpr int polarity_decimals = 4;
	inline constexpr int pmi_decimals = 5;
	inline constexpr int similarity_decimals = 6;

	double round_to(double value, int decimals);

	Json to_json(const TagStats& stats);
	Json to_json(const FrequencyList& list);
	Json to_json(const CollocationTable& table);
	Json to_json(const AlignmentResult& result);

	enum ReportSection : unsigned
	{
		section_stats = 1u << 0,
		section_freq = 1u << 1,
		section_colloc = 1u << 2,
		section_all = section_stats | section_freq | section_colloc,
	};

	/// Parses a comma-separated list of stats, freq, colloc; throws Error on unknown names.
	unsigned parse_sections(std::string_view list);

	Json to_json(const ComparisonReport& report, unsigned sections = section_all);

	/// {"ok": true, "data": ...}
	Json ok_envelope(Json data);
	/// {"ok": false, "error": {"code", "message", ...extra}}
	Json error_envelope(std::string_view code, std::string_view message, Json extra = Json::object());

	/// Compact, deterministic, invalid UTF-8 replaced.
	std::string dump(const Json& j);

	/// Terminal column width: 2 for CJK code points, 1 otherwise.
	std::size_t display_width(std::string_view s);

	std::string render_text(const ComparisonReport& report, unsigned sections = section_all);
	std::string render_text(const AlignmentResult& result);
}
