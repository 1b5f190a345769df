#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "transmute/discrete_fourier.hpp"
#include "transmute/error.hpp"

using namespace transmute;
using cd = std::complex<double>;

namespace
{
	constexpr double pi = std::numbers::pi;

	GridFunction random_sequence(double tau, long long k_min, int len, std::uint64_t seed)
	{
		std::mt19937_64 rng(seed);
		std::normal_distribution<double> nd;
		GridFunction u{tau, k_min, {}};
		for (int i = 0; i < len; ++i)
			u.values.emplace_back(nd(rng), nd(rng));
		return u;
	}
} // namespace

TEST(Dft, DeltaIsConstant)
{
	const GridFunction u{0.1, 0, {1.0}};
	for (double mu : {-30.0, -1.0, 0.0, 12.5, 31.0})
		EXPECT_NEAR(std::abs(dft(u, mu) - cd(0.1)), 0.0, 1e-16);
	EXPECT_THROW(dft(u, pi / 0.1), PreconditionError);
}

TEST(Dft, AlignedExponentialSums)
{
	const double tau = 0.05, nu = 7.3;
	GridFunction u{tau, -5, {}};
	for (long long k = -5; k < 20; ++k)
		u.values.push_back(std::polar(1.0, nu * k * tau));
	EXPECT_NEAR(std::abs(dft(u, nu) - cd(tau * 25)), 0.0, 1e-13);
}

TEST(Dft, Linearity)
{
	auto u = random_sequence(0.1, -3, 10, 1), v = random_sequence(0.1, -3, 10, 2);
	const cd a(0.3, -1.2), b(2.0, 0.5);
	GridFunction w{0.1, -3, {}};
	for (std::size_t i = 0; i < u.values.size(); ++i)
		w.values.push_back(a * u.values[i] + b * v.values[i]);
	for (double mu : {-20.0, 3.0, 11.0})
		EXPECT_NEAR(std::abs(dft(w, mu) - (a * dft(u, mu) + b * dft(v, mu))), 0.0, 1e-13);
}

TEST(Idft, ConstantGivesGridDelta)
{
	const double tau = 0.1;
	auto one = [](double) { return cd(1.0); };
	for (long long k = -5; k <= 5; ++k)
		EXPECT_NEAR(std::abs(idft(one, tau, k, 256) - cd(k == 0 ? 1.0 / tau : 0.0)), 0.0, 1e-12);
	const long long m = 3;
	auto shift = [&](double mu) { return std::polar(1.0, mu * m * tau); };
	for (long long k = -5; k <= 5; ++k)
		EXPECT_NEAR(std::abs(idft(shift, tau, k, 256) - cd(k == -m ? 1.0 / tau : 0.0)), 0.0, 1e-12);
}

TEST(Idft, InversionPair)
{
	for (std::uint64_t seed = 0; seed < 10; ++seed)
	{
		auto u = random_sequence(0.02, -20, 64, seed);
		const int nodes = default_quad_nodes(u);
		auto v = [&](double mu) { return dft(u, mu); };
		for (long long k = u.k_min - 2; k <= u.k_max() + 2; k += 7)
			EXPECT_NEAR(std::abs(idft(v, u.tau, k, nodes) - u.at(k)), 0.0, 1e-10);
	}
}

TEST(Idft, SpectralConvergenceOnAnalyticSymbol)
{
	// v(mu) = 1 / (a - cos(mu tau)) has grid coefficients r^|k| / (tau sqrt(a^2 - 1)),
	// r = a - sqrt(a^2 - 1).
	const double tau = 0.25, a = 1.5;
	const double r = a - std::sqrt(a * a - 1.0);
	auto v = [&](double mu) { return cd(1.0 / (a - std::cos(mu * tau))); };
	const long long k = 2;
	const double exact = std::pow(r, k) / (tau * std::sqrt(a * a - 1.0));
	double prev = std::abs(idft(v, tau, k, 4) - exact);
	for (int n = 8; n <= 64; n *= 2)
	{
		const double err = std::abs(idft(v, tau, k, n) - exact);
		if (prev > 1e-13)
			EXPECT_GT(prev / std::max(err, 1e-300), 10.0) << n;
		prev = err;
	}
	EXPECT_LT(prev, 1e-13);
}

TEST(Parseval, KnownSequences)
{
	const GridFunction d{0.1, 0, {1.0}};
	auto p = parseval_check(d, 256);
	EXPECT_NEAR(p.rhs, 0.1, 1e-15);
	EXPECT_NEAR(p.lhs, 0.1, 1e-14);

	const GridFunction two{0.1, 0, {1.0, 1.0}};
	p = parseval_check(two, 256);
	EXPECT_NEAR(p.rhs, 0.2, 1e-15);
	EXPECT_NEAR(p.lhs, 0.2, 1e-14);
}

TEST(Parseval, RandomSequences)
{
	for (std::uint64_t seed = 0; seed < 20; ++seed)
	{
		auto u = random_sequence(0.01, -10, 64, 100 + seed);
		const auto p = parseval_check(u, default_quad_nodes(u));
		EXPECT_LT(std::abs(p.lhs - p.rhs) / p.rhs, 1e-10);
	}
}
