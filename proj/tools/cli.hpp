#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace varcorp::cli
{
	inline constexpr int exit_ok = 0;
	inline constexpr int exit_usage = 1;
	inline constexpr int exit_data = 2;

	/// Runs one command line (args excludes the program name). Never throws.
	int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
}
