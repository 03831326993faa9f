#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <varcorp/analyze.hpp>
#include <varcorp/post.hpp>

namespace fixtures
{
	std::filesystem::path path(std::string_view name);
	std::string read(std::string_view name);

	/// Directory under the system temp dir, removed on destruction.
	class TempDir
	{
	public:
		TempDir();
		~TempDir();
		TempDir(const TempDir&) = delete;
		TempDir& operator=(const TempDir&) = delete;

		const std::filesystem::path& path() const noexcept { return path_; }
		std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

	private:
		std::filesystem::path path_;
	};

	/// The Dcard export and Weibo page ingested and tokenized with the per-source dictionaries.
	varcorp::Corpus corpus();
	varcorp::PolarityLexicon lexicon();
}
