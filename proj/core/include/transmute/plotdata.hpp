#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace transmute
{
	/// One CSV field: numbers are printed in shortest round-trip form, text verbatim.
	using Cell = std::variant<double, long long, std::string>;

	struct Series
	{
		std::vector<std::string> columns;
		std::vector<std::vector<Cell>> rows;
	};

	/// Writes an optional "# <metadata>" line, the header and the rows, LF line
	/// endings, values in round-trip precision. An empty series gives a
	/// header-only file. Throws Error on IO failure.
	void emit_plotdata(const Series &series, const std::filesystem::path &path, const std::string &metadata = {});

	/// Same text as emit_plotdata writes.
	std::string format_plotdata(const Series &series, const std::string &metadata = {});
} // namespace transmute
