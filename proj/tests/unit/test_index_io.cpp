#include <gtest/gtest.h>

#include <fstream>

#include <varcorp/error.hpp>
#include <varcorp/index_io.hpp>
#include <varcorp/ingest.hpp>

#include "fixtures.hpp"

using namespace varcorp;

namespace
{
	LatentSpace sample_space()
	{
		const TokenLists docs{ { "減肥", "好難" }, { "減肥", "運動", "加油" }, { "健身", "運動" }, { "好累" } };
		return fit_latent_space(docs,
			{ { "1", SourceSite::dcard }, { "2", SourceSite::dcard }, { "3", SourceSite::dcard }, { "4", SourceSite::dcard } },
			3);
	}
}

TEST(IndexIo, RoundTripPreservesEverything)
{
	fixtures::TempDir dir;
	const auto space = sample_space();
	write_index(space, dir.path());
	const auto back = read_index(dir.path());
	EXPECT_EQ(back.tfidf.vocab, space.tfidf.vocab);
	EXPECT_EQ(back.tfidf.df, space.tfidf.df);
	EXPECT_EQ(back.tfidf.idf, space.tfidf.idf);
	EXPECT_EQ(back.tfidf.doc_count, space.tfidf.doc_count);
	EXPECT_EQ(back.lsi.k, space.lsi.k);
	EXPECT_EQ(back.lsi.k_eff, space.lsi.k_eff);
	EXPECT_EQ(back.lsi.sigma, space.lsi.sigma);
	EXPECT_EQ(back.lsi.u, space.lsi.u);
	EXPECT_EQ(back.index.vectors, space.index.vectors);
	EXPECT_EQ(back.index.refs, space.index.refs);
	EXPECT_EQ(back.warnings, space.warnings);
}

TEST(IndexIo, FilesAreByteIdenticalAcrossWrites)
{
	fixtures::TempDir a, b;
	write_index(sample_space(), a.path());
	write_index(sample_space(), b.path());
	for (const char* name : { "vocab.json", "docs.json", "weights.bin", "u.bin", "docs.bin" })
	{
		EXPECT_EQ(read_file(a / name), read_file(b / name)) << name;
	}
	const auto header = read_file(a / "u.bin").substr(0, 12);
	EXPECT_EQ(header.substr(0, 4), "LSIX");
	EXPECT_EQ(header[4], '\x01');
	EXPECT_EQ(header[8], '\x02');
}

TEST(IndexIo, RejectsCorruptFiles)
{
	fixtures::TempDir dir;
	write_index(sample_space(), dir.path());
	{
		auto bytes = read_file(dir / "docs.bin");
		bytes[0] = 'X';
		std::ofstream{ dir / "docs.bin", std::ios::binary } << bytes;
	}
	EXPECT_THROW(read_index(dir.path()), Error);

	write_index(sample_space(), dir.path());
	{
		auto bytes = read_file(dir / "u.bin");
		bytes.pop_back();
		std::ofstream{ dir / "u.bin", std::ios::binary } << bytes;
	}
	EXPECT_THROW(read_index(dir.path()), Error);

	EXPECT_THROW(read_index(dir / "missing"), IoError);
}
