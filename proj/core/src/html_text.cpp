#include "html_text.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

#include <varcorp/utf8.hpp>

namespace varcorp::detail
{
	namespace
	{
		constexpr std::array void_elements{ "area", "base", "br", "col", "embed", "hr", "img",
			"input", "link", "meta", "param", "source", "track", "wbr" };

		bool is_void(std::string_view name)
		{
			return std::find(void_elements.begin(), void_elements.end(), name) != void_elements.end();
		}

		bool is_alpha(char c) noexcept { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

		bool is_ascii_space(char c) noexcept
		{
			return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
		}

		bool has_class(const std::map<std::string, std::string>& attrs, std::string_view cls)
		{
			const auto it = attrs.find("class");
			if (it == attrs.end()) return false;
			std::string_view v = it->second;
			std::size_t pos = 0;
			while (pos < v.size())
			{
				while (pos < v.size() && is_ascii_space(v[pos])) ++pos;
				auto end = pos;
				while (end < v.size() && !is_ascii_space(v[end])) ++end;
				if (v.substr(pos, end - pos) == cls) return true;
				pos = end;
			}
			return false;
		}

		std::size_t find_icase(std::string_view hay, std::string_view needle, std::size_t from)
		{
			if (needle.size() > hay.size()) return std::string_view::npos;
			for (std::size_t i = from; i + needle.size() <= hay.size(); ++i)
			{
				bool eq = true;
				for (std::size_t j = 0; j < needle.size() && eq; ++j)
				{
					char c = hay[i + j];
					if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
					eq = c == needle[j];
				}
				if (eq) return i;
			}
			return std::string_view::npos;
		}

		struct Tag
		{
			std::string name;
			std::map<std::string, std::string> attrs;
			bool self_closing = false;
		};

		class Scanner
		{
		public:
			explicit Scanner(std::string_view html) : html_(html) {}

			HtmlScan run()
			{
				while (pos_ < html_.size() && result_.ok)
				{
					if (html_[pos_] == '<' && pos_ + 1 < html_.size())
					{
						const char next = html_[pos_ + 1];
						if (next == '!' || next == '?') { markup_declaration(); continue; }
						if (next == '/') { end_tag(); continue; }
						if (is_alpha(next)) { start_tag(); continue; }
					}
					text();
				}
				if (result_.ok && block_)
				{
					fail("unterminated post block");
				}
				if (!result_.ok) result_.blocks.clear();
				return std::move(result_);
			}

		private:
			struct Open
			{
				std::string name;
				bool text_region;
				bool block_root;
			};

			struct PendingBlock
			{
				HtmlBlock block;
				std::string all_text;
				std::string region_text;
				bool has_region = false;
			};

			void fail(std::string why)
			{
				result_.ok = false;
				result_.diagnostic = std::move(why) + " at byte " + std::to_string(pos_);
			}

			void emit(std::string_view decoded)
			{
				if (!block_) return;
				block_->all_text.append(decoded);
				if (region_depth_ > 0) block_->region_text.append(decoded);
			}

			void text()
			{
				auto end = html_.find('<', pos_ + 1);
				if (end == std::string_view::npos) end = html_.size();
				if (block_) emit(decode_entities(html_.substr(pos_, end - pos_)));
				pos_ = end;
			}

			void markup_declaration()
			{
				if (html_.compare(pos_, 4, "<!--") == 0)
				{
					const auto end = html_.find("-->", pos_ + 4);
					if (end == std::string_view::npos) return fail("unterminated comment");
					pos_ = end + 3;
					return;
				}
				const auto end = html_.find('>', pos_);
				if (end == std::string_view::npos) return fail("unterminated declaration");
				pos_ = end + 1;
			}

			std::string read_name()
			{
				std::string name;
				while (pos_ < html_.size())
				{
					const char c = html_[pos_];
					if (is_ascii_space(c) || c == '>' || c == '/' || c == '=') break;
					name.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
					++pos_;
				}
				return name;
			}

			void skip_ws()
			{
				while (pos_ < html_.size() && is_ascii_space(html_[pos_])) ++pos_;
			}

			void end_tag()
			{
				pos_ += 2;
				const auto name = read_name();
				const auto close = html_.find('>', pos_);
				if (close == std::string_view::npos) return fail("unterminated end tag");
				pos_ = close + 1;

				const auto it = std::find_if(stack_.rbegin(), stack_.rend(), [&](const Open& o) { return o.name == name; });
				if (it == stack_.rend()) return;
				const auto keep = static_cast<std::size_t>(stack_.rend() - it) - 1;
				while (stack_.size() > keep)
				{
					const auto open = stack_.back();
					stack_.pop_back();
					if (open.text_region) --region_depth_;
					if (open.block_root) finish_block();
				}
			}

			bool read_tag(Tag& tag)
			{
				++pos_;
				tag.name = read_name();
				for (;;)
				{
					skip_ws();
					if (pos_ >= html_.size()) { fail("unterminated tag <" + tag.name + ">"); return false; }
					const char c = html_[pos_];
					if (c == '>') { ++pos_; return true; }
					if (c == '/')
					{
						++pos_;
						if (pos_ < html_.size() && html_[pos_] == '>') { tag.self_closing = true; ++pos_; return true; }
						continue;
					}
					auto attr = read_name();
					if (attr.empty()) { ++pos_; continue; }
					skip_ws();
					std::string value;
					if (pos_ < html_.size() && html_[pos_] == '=')
					{
						++pos_;
						skip_ws();
						if (pos_ >= html_.size()) { fail("unterminated attribute"); return false; }
						const char q = html_[pos_];
						if (q == '"' || q == '\'')
						{
							const auto end = html_.find(q, pos_ + 1);
							if (end == std::string_view::npos) { fail("unterminated attribute value"); return false; }
							value = decode_entities(html_.substr(pos_ + 1, end - pos_ - 1));
							pos_ = end + 1;
						}
						else
						{
							const auto start = pos_;
							while (pos_ < html_.size() && !is_ascii_space(html_[pos_]) && html_[pos_] != '>') ++pos_;
							value = decode_entities(html_.substr(start, pos_ - start));
						}
					}
					tag.attrs.emplace(std::move(attr), std::move(value));
				}
			}

			void start_tag()
			{
				Tag tag;
				if (!read_tag(tag)) return;

				if (tag.name == "script" || tag.name == "style")
				{
					if (tag.self_closing) return;
					const auto end = find_icase(html_, "</" + tag.name, pos_);
					if (end == std::string_view::npos) return fail("unterminated <" + tag.name + ">");
					const auto close = html_.find('>', end);
					if (close == std::string_view::npos) return fail("unterminated end tag");
					pos_ = close + 1;
					return;
				}

				if (tag.name == "br")
				{
					emit("\n");
					return;
				}

				const bool opens_block = !block_ && has_class(tag.attrs, "post");
				if (tag.self_closing || is_void(tag.name))
				{
					if (opens_block) result_.blocks.push_back(HtmlBlock{ std::move(tag.attrs), std::nullopt });
					return;
				}

				Open open{ tag.name, false, false };
				if (opens_block)
				{
					block_.emplace();
					block_->block.attrs = std::move(tag.attrs);
					open.block_root = true;
				}
				else if (block_ && has_class(tag.attrs, "text"))
				{
					open.text_region = true;
					block_->has_region = true;
					++region_depth_;
				}
				stack_.push_back(std::move(open));
			}

			void finish_block()
			{
				auto& b = *block_;
				if (b.has_region) b.block.text = std::move(b.region_text);
				else if (!utf8::trim(b.all_text).empty()) b.block.text = std::move(b.all_text);
				result_.blocks.push_back(std::move(b.block));
				block_.reset();
				region_depth_ = 0;
			}

			std::string_view html_;
			std::size_t pos_ = 0;
			std::vector<Open> stack_;
			std::optional<PendingBlock> block_;
			int region_depth_ = 0;
			HtmlScan result_;
		};
	}

	HtmlScan scan_post_blocks(std::string_view html)
	{
		return Scanner{ html }.run();
	}

	std::string decode_entities(std::string_view s)
	{
		std::string out;
		out.reserve(s.size());
		std::size_t pos = 0;
		while (pos < s.size())
		{
			const auto amp = s.find('&', pos);
			if (amp == std::string_view::npos)
			{
				out.append(s.substr(pos));
				break;
			}
			out.append(s.substr(pos, amp - pos));
			pos = amp;
			const auto semi = s.find(';', amp + 1);
			if (semi == std::string_view::npos || semi - amp > 10)
			{
				out.push_back('&');
				++pos;
				continue;
			}
			const auto name = s.substr(amp + 1, semi - amp - 1);
			char32_t cp = 0;
			if (name == "amp") cp = U'&';
			else if (name == "lt") cp = U'<';
			else if (name == "gt") cp = U'>';
			else if (name == "quot") cp = U'"';
			else if (name == "apos") cp = U'\'';
			else if (name == "nbsp") cp = 0x00A0;
			else if (name.size() >= 2 && name[0] == '#')
			{
				const bool hex = name[1] == 'x' || name[1] == 'X';
				const auto digits = name.substr(hex ? 2 : 1);
				std::uint32_t v = 0;
				bool valid = !digits.empty();
				for (char c : digits)
				{
					int d;
					if (c >= '0' && c <= '9') d = c - '0';
					else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
					else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
					else { valid = false; break; }
					v = v * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
					if (v > 0x10FFFF) { valid = false; break; }
				}
				if (valid && v != 0 && !(v >= 0xD800 && v <= 0xDFFF)) cp = v;
			}
			if (cp == 0)
			{
				out.push_back('&');
				++pos;
				continue;
			}
			utf8::append(out, cp);
			pos = semi + 1;
		}
		return out;
	}
}
