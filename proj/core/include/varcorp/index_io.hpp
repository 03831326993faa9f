#pragma once

#include <cstdint>
#include <filesystem>

#include <varcorp/vectorspace.hpp>

namespace varcorp
{
	inline constexpr std::uint32_t index_format_version = 1;

	/// Writes a fitted latent space to `dir` (created if missing):
	///
	///   vocab.json   JSON array of terms in id order
	///   docs.json    JSON array of {"id", "source"} in index row order
	///   weights.bin  header, df[V], idf[V], sigma[k_eff]
	///   u.bin        header, U_k as V x k_eff
	///   docs.bin     header, document vectors as D x k_eff
	///
	/// Every .bin file starts with the 44-byte header
	///   "LSIX" | u32 version | u32 section (1 weights, 2 u, 3 docs) | u64 V | u64 D | u64 k_eff | u64 k
	/// and all numbers are little-endian (float64 for arrays, row-major).
	void write_index(const LatentSpace& space, const std::filesystem::path& dir);

	/// Throws IoError or Error on a missing file, bad magic, version or size mismatch.
	LatentSpace read_index(const std::filesystem::path& dir);
}
