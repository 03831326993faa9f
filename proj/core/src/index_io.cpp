#include <varcorp/index_io.hpp>

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include <varcorp/error.hpp>
#include <varcorp/ingest.hpp>

namespace varcorp
{
	namespace
	{
		constexpr char magic[4] = { 'L', 'S', 'I', 'X' };
		constexpr std::size_t header_size = 44;

		enum class Section : std::uint32_t
		{
			weights = 1,
			u = 2,
			docs = 3,
		};

		struct Header
		{
			std::uint32_t version;
			Section section;
			std::uint64_t terms;
			std::uint64_t docs;
			std::uint64_t k_eff;
			std::uint64_t k;
		};

		class LeWriter
		{
		public:
			void u32(std::uint32_t v) { put(v, 4); }
			void u64(std::uint64_t v) { put(v, 8); }
			void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
			void raw(const char* p, std::size_t n) { bytes_.append(p, n); }
			const std::string& bytes() const noexcept { return bytes_; }

		private:
			void put(std::uint64_t v, int n)
			{
				for (int i = 0; i < n; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
			}
			std::string bytes_;
		};

		class LeReader
		{
		public:
			LeReader(std::string bytes, std::string path) : bytes_(std::move(bytes)), path_(std::move(path)) {}

			std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
			std::uint64_t u64() { return get(8); }
			double f64() { return std::bit_cast<double>(get(8)); }
			std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

			void expect_magic()
			{
				if (bytes_.size() < header_size || std::memcmp(bytes_.data(), magic, 4) != 0)
				{
					throw Error(path_ + ": not an LSIX file");
				}
				pos_ = 4;
			}

		private:
			std::uint64_t get(int n)
			{
				if (remaining() < static_cast<std::size_t>(n)) throw Error(path_ + ": truncated");
				std::uint64_t v = 0;
				for (int i = 0; i < n; ++i) v |= std::uint64_t{ static_cast<unsigned char>(bytes_[pos_ + i]) } << (8 * i);
				pos_ += static_cast<std::size_t>(n);
				return v;
			}

			std::string bytes_;
			std::string path_;
			std::size_t pos_ = 0;
		};

		void write_header(LeWriter& w, const Header& h)
		{
			w.raw(magic, 4);
			w.u32(h.version);
			w.u32(static_cast<std::uint32_t>(h.section));
			w.u64(h.terms);
			w.u64(h.docs);
			w.u64(h.k_eff);
			w.u64(h.k);
		}

		Header read_header(LeReader& r, Section expected, const std::string& path)
		{
			r.expect_magic();
			Header h{};
			h.version = r.u32();
			if (h.version != index_format_version) throw Error(path + ": unsupported version " + std::to_string(h.version));
			h.section = static_cast<Section>(r.u32());
			if (h.section != expected) throw Error(path + ": unexpected section");
			h.terms = r.u64();
			h.docs = r.u64();
			h.k_eff = r.u64();
			h.k = r.u64();
			return h;
		}

		void write_bytes(const std::filesystem::path& path, const std::string& bytes)
		{
			std::ofstream out{ path, std::ios::binary };
			if (!out) throw IoError(path.string(), "cannot open for writing");
			out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
			if (!out) throw IoError(path.string(), "write failed");
		}

		void write_matrix(LeWriter& w, const Matrix& m)
		{
			for (double v : m.data()) w.f64(v);
		}

		Matrix read_matrix(LeReader& r, std::size_t rows, std::size_t cols, const std::string& path)
		{
			if (r.remaining() != rows * cols * 8) throw Error(path + ": size does not match header");
			Matrix m(rows, cols);
			for (auto& v : m.data()) v = r.f64();
			return m;
		}
	}

	void write_index(const LatentSpace& space, const std::filesystem::path& dir)
	{
		std::error_code ec;
		std::filesystem::create_directories(dir, ec);
		if (ec) throw IoError(dir.string(), ec.message());

		const Header base{ index_format_version, Section::weights, space.tfidf.vocab.size(), space.index.refs.size(),
			space.lsi.k_eff, space.lsi.k };

		write_bytes(dir / "vocab.json", nlohmann::json(space.tfidf.vocab.terms()).dump() + "\n");
		auto docs = nlohmann::ordered_json::array();
		for (const auto& ref : space.index.refs)
		{
			nlohmann::ordered_json d;
			d["id"] = ref.id;
			d["source"] = to_string(ref.source);
			docs.push_back(d);
		}
		write_bytes(dir / "docs.json", docs.dump() + "\n");

		LeWriter weights;
		write_header(weights, base);
		for (auto df : space.tfidf.df) weights.f64(static_cast<double>(df));
		for (auto idf : space.tfidf.idf) weights.f64(idf);
		for (auto s : space.lsi.sigma) weights.f64(s);
		write_bytes(dir / "weights.bin", weights.bytes());

		LeWriter u;
		auto h = base;
		h.section = Section::u;
		write_header(u, h);
		write_matrix(u, space.lsi.u);
		write_bytes(dir / "u.bin", u.bytes());

		LeWriter vecs;
		h.section = Section::docs;
		write_header(vecs, h);
		write_matrix(vecs, space.index.vectors);
		write_bytes(dir / "docs.bin", vecs.bytes());
	}

	LatentSpace read_index(const std::filesystem::path& dir)
	{
		LatentSpace space;

		const auto vocab_path = (dir / "vocab.json").string();
		const auto terms = nlohmann::json::parse(read_file(vocab_path), nullptr, false);
		if (!terms.is_array()) throw Error(vocab_path + ": expected a JSON array");
		for (const auto& t : terms)
		{
			if (!t.is_string()) throw Error(vocab_path + ": terms must be strings");
			space.tfidf.vocab.add(t.get<std::string>());
		}
		if (space.tfidf.vocab.size() != terms.size()) throw Error(vocab_path + ": duplicate terms");

		const auto docs_path = (dir / "docs.json").string();
		const auto docs = nlohmann::json::parse(read_file(docs_path), nullptr, false);
		if (!docs.is_array()) throw Error(docs_path + ": expected a JSON array");
		for (const auto& d : docs)
		{
			if (!d.is_object() || !d.contains("id") || !d["id"].is_string() || !d.contains("source") || !d["source"].is_string())
			{
				throw Error(docs_path + ": malformed document reference");
			}
			const auto source = parse_source(d["source"].get<std::string>());
			if (!source) throw Error(docs_path + ": unknown source");
			space.index.refs.push_back({ d["id"].get<std::string>(), *source });
		}

		const auto weights_path = (dir / "weights.bin").string();
		LeReader w{ read_file(weights_path), weights_path };
		const auto h = read_header(w, Section::weights, weights_path);
		if (h.terms != space.tfidf.vocab.size() || h.docs != space.index.refs.size())
		{
			throw Error(weights_path + ": header does not match vocab.json/docs.json");
		}
		if (w.remaining() != (2 * h.terms + h.k_eff) * 8) throw Error(weights_path + ": size does not match header");
		space.tfidf.doc_count = h.docs;
		space.tfidf.df.resize(h.terms);
		for (auto& df : space.tfidf.df) df = static_cast<std::uint64_t>(w.f64());
		space.tfidf.idf.resize(h.terms);
		for (auto& idf : space.tfidf.idf) idf = w.f64();
		space.lsi.k = h.k;
		space.lsi.k_eff = h.k_eff;
		space.lsi.sigma.resize(h.k_eff);
		for (auto& s : space.lsi.sigma) s = w.f64();

		const auto u_path = (dir / "u.bin").string();
		LeReader u{ read_file(u_path), u_path };
		const auto hu = read_header(u, Section::u, u_path);
		if (hu.terms != h.terms || hu.k_eff != h.k_eff) throw Error(u_path + ": header does not match weights.bin");
		space.lsi.u = read_matrix(u, h.terms, h.k_eff, u_path);

		const auto docs_bin = (dir / "docs.bin").string();
		LeReader d{ read_file(docs_bin), docs_bin };
		const auto hd = read_header(d, Section::docs, docs_bin);
		if (hd.docs != h.docs || hd.k_eff != h.k_eff) throw Error(docs_bin + ": header does not match weights.bin");
		space.index.vectors = read_matrix(d, h.docs, h.k_eff, docs_bin);

		space.warnings = latent_space_warnings(space.index.refs.size(), space.lsi);
		return space;
	}
}
