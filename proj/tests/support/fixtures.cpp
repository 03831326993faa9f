#include "fixtures.hpp"

#include <atomic>
#include <random>

#include <varcorp/ingest.hpp>
#include <varcorp/segment.hpp>

namespace fixtures
{
	std::filesystem::path path(std::string_view name)
	{
		return std::filesystem::path{ VARCORP_FIXTURE_DIR } / name;
	}

	std::string read(std::string_view name)
	{
		return varcorp::read_file(path(name));
	}

	TempDir::TempDir()
	{
		static std::atomic<unsigned> counter{ 0 };
		std::random_device rd;
		path_ = std::filesystem::temp_directory_path()
			/ ("varcorp-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
		std::filesystem::create_directories(path_);
	}

	TempDir::~TempDir()
	{
		std::error_code ec;
		std::filesystem::remove_all(path_, ec);
	}

	varcorp::Corpus corpus()
	{
		auto posts = varcorp::parse_dcard_export(read("dcard_export.json")).posts;
		auto weibo = varcorp::parse_weibo_page(read("weibo_page.html")).posts;
		posts.insert(posts.end(), weibo.begin(), weibo.end());
		const varcorp::FmmTokenizer dcard{ std::make_shared<const varcorp::Dictionary>(
			varcorp::load_dictionary(path("dict_dcard.txt"))) };
		const varcorp::FmmTokenizer weibo_tok{ std::make_shared<const varcorp::Dictionary>(
			varcorp::load_dictionary(path("dict_weibo.txt"))) };
		return varcorp::tokenize_corpus(varcorp::Corpus{ std::move(posts) },
			{ { varcorp::SourceSite::dcard, &dcard }, { varcorp::SourceSite::weibo, &weibo_tok } });
	}

	varcorp::PolarityLexicon lexicon()
	{
		return varcorp::load_lexicon(path("lexicon.tsv"));
	}
}
