#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace varcorp
{
	/// Base class for every error raised by the library.
	class Error : public std::runtime_error
	{
	public:
		using std::runtime_error::runtime_error;
	};

	class IoError : public Error
	{
	public:
		IoError(const std::string& path, const std::string& what)
			: Error(path + ": " + what), path_(path)
		{
		}

		const std::string& path() const noexcept { return path_; }

	private:
		std::string path_;
	};

	/// A required field of an input record is missing or has the wrong type.
	class MissingField : public Error
	{
	public:
		MissingField(std::string field, std::size_t index)
			: Error("record " + std::to_string(index) + ": missing or invalid field '" + field + "'"),
			  field_(std::move(field)), index_(index)
		{
		}

		const std::string& field() const noexcept { return field_; }
		std::size_t index() const noexcept { return index_; }

	private:
		std::string field_;
		std::size_t index_;
	};

	/// A corpus or index file line does not follow the documented schema. Line numbers are 1-based.
	class SchemaViolation : public Error
	{
	public:
		SchemaViolation(std::size_t line_no, const std::string& detail, const std::string& path = {})
			: Error((path.empty() ? "" : path + ":") + "line " + std::to_string(line_no) + ": " + detail),
			  line_no_(line_no), detail_(detail)
		{
		}

		std::size_t line_no() const noexcept { return line_no_; }
		const std::string& detail() const noexcept { return detail_; }

	private:
		std::size_t line_no_;
		std::string detail_;
	};

	class EmptyDictionary : public Error
	{
	public:
		using Error::Error;
	};

	class EmptyCorpus : public Error
	{
	public:
		using Error::Error;
	};

	class DegenerateMatrix : public Error
	{
	public:
		using Error::Error;
	};

	class DimensionMismatch : public Error
	{
	public:
		DimensionMismatch(std::size_t expected, std::size_t actual)
			: Error("dimension mismatch: expected " + std::to_string(expected) + ", got " + std::to_string(actual))
		{
		}
	};
}
