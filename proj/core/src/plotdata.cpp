#include "transmute/plotdata.hpp"

#include <charconv>
#include <fstream>

#include "transmute/error.hpp"

namespace transmute
{
	namespace
	{
		void append_cell(std::string &out, const Cell &cell)
		{
			if (const auto *text = std::get_if<std::string>(&cell))
			{
				out += *text;
				return;
			}
			char buf[32];
			const auto res = std::holds_alternative<double>(cell)
			                     ? std::to_chars(buf, buf + sizeof buf, std::get<double>(cell))
			                     : std::to_chars(buf, buf + sizeof buf, std::get<long long>(cell));
			out.append(buf, res.ptr);
		}
	} // namespace

	std::string format_plotdata(const Series &series, const std::string &metadata)
	{
		std::string out;
		if (!metadata.empty())
		{
			out += "# ";
			out += metadata;
			out += '\n';
		}
		for (std::size_t c = 0; c < series.columns.size(); ++c)
		{
			if (c)
				out += ',';
			out += series.columns[c];
		}
		out += '\n';
		for (const auto &row : series.rows)
		{
			if (row.size() != series.columns.size())
				throw Error("plot row has " + std::to_string(row.size()) + " values for " +
				            std::to_string(series.columns.size()) + " columns");
			for (std::size_t c = 0; c < row.size(); ++c)
			{
				if (c)
					out += ',';
				append_cell(out, row[c]);
			}
			out += '\n';
		}
		return out;
	}

	void emit_plotdata(const Series &series, const std::filesystem::path &path, const std::string &metadata)
	{
		const std::string text = format_plotdata(series, metadata);
		if (path.has_parent_path())
		{
			std::error_code ec;
			std::filesystem::create_directories(path.parent_path(), ec);
		}
		std::ofstream os(path, std::ios::binary | std::ios::trunc);
		if (!os)
			throw Error("cannot open " + path.string() + " for writing");
		os.write(text.data(), static_cast<std::streamsize>(text.size()));
		if (!os)
			throw Error("write to " + path.string() + " failed");
	}
} // namespace transmute
