#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "transmute/plotdata.hpp"

using namespace transmute;

namespace
{
	std::string slurp(const std::filesystem::path &p)
	{
		std::ifstream is(p, std::ios::binary);
		std::ostringstream ss;
		ss << is.rdbuf();
		return ss.str();
	}
} // namespace

TEST(Plotdata, EmptySeriesIsHeaderOnly)
{
	const Series s{{"tau", "c_obs"}, {}};
	EXPECT_EQ(format_plotdata(s), "tau,c_obs\n");
	EXPECT_EQ(format_plotdata(s, "{\"a\":1}"), "# {\"a\":1}\ntau,c_obs\n");
}

TEST(Plotdata, RoundTripPrecisionAndLineEndings)
{
	const Series s{{"x", "n", "label"}, {{0.1, 3LL, std::string("a")}, {1.0 / 3.0, -7LL, std::string("b")}}};
	const std::string text = format_plotdata(s);
	EXPECT_EQ(text.find('\r'), std::string::npos);
	EXPECT_NE(text.find("0.1,3,a\n"), std::string::npos);
	std::istringstream is(text);
	std::string line;
	std::getline(is, line);
	std::getline(is, line);
	std::getline(is, line);
	EXPECT_EQ(std::stod(line.substr(0, line.find(','))), 1.0 / 3.0);
}

TEST(Plotdata, FileMatchesTextAndIsDeterministic)
{
	const auto dir = std::filesystem::temp_directory_path() / "transmute_plotdata_test";
	std::filesystem::create_directories(dir);
	const Series s{{"a", "b"}, {{1.5, 2LL}, {-0.25, 4LL}}};
	emit_plotdata(s, dir / "one.csv", "{}");
	emit_plotdata(s, dir / "two.csv", "{}");
	EXPECT_EQ(slurp(dir / "one.csv"), format_plotdata(s, "{}"));
	EXPECT_EQ(slurp(dir / "one.csv"), slurp(dir / "two.csv"));
	std::filesystem::remove_all(dir);
}

TEST(Plotdata, RejectsRaggedRows)
{
	const Series s{{"a", "b"}, {{1.0}}};
	EXPECT_ANY_THROW(format_plotdata(s));
}
