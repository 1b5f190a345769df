#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "transmute/cutoff.hpp"
#include "transmute/error.hpp"
#include "transmute/kernels.hpp"
#include "transmute/quadrature.hpp"

using namespace transmute;

namespace
{
	constexpr double pi = std::numbers::pi;

	State random_filtered(SpectrumPtr spec, double tau, double delta, std::uint64_t seed)
	{
		std::mt19937_64 rng(seed);
		std::normal_distribution<double> nd;
		State s(std::move(spec));
		for (std::size_t j = 0; j < s.size(); ++j)
			s[j] = Complex(nd(rng), nd(rng));
		return filter(s, FilterBand::upto(delta / tau));
	}

	State single_mode(SpectrumPtr spec, int j)
	{
		State s(spec);
		for (std::size_t i = 0; i < s.size(); ++i)
			if (spec->label(i).index == j)
				s[i] = 1.0;
		return s;
	}
} // namespace

TEST(Quadrature, GaussLegendreExactness)
{
	for (int n : {1, 2, 5, 16, 40})
	{
		const auto r = gauss_legendre(n);
		for (int p = 0; p < 2 * n; ++p)
		{
			double s = 0.0;
			for (std::size_t i = 0; i < r.size(); ++i)
				s += r.weights[i] * std::pow(r.nodes[i], p);
			const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
			EXPECT_NEAR(s, exact, 1e-13) << n << " " << p;
		}
	}
}

TEST(Cutoff, PlateauSupportAndShape)
{
	const auto chi = Cutoff::symmetric(0.9, 1.3);
	EXPECT_EQ(chi(0.0), 1.0);
	EXPECT_EQ(chi(0.9), 1.0);
	EXPECT_EQ(chi(-0.9), 1.0);
	EXPECT_EQ(chi(1.3), 0.0);
	EXPECT_EQ(chi(-2.0), 0.0);
	double prev = 1.0;
	for (double a = 0.9; a <= 1.3; a += 0.001)
	{
		const double v = chi(a);
		EXPECT_GE(v, 0.0);
		EXPECT_LE(v, 1.0);
		EXPECT_LE(v, prev + 1e-15);
		EXPECT_EQ(v, chi(-a));
		prev = v;
	}
	EXPECT_THROW(Cutoff::symmetric(1.0, 1.0), PreconditionError);
}

TEST(Cutoff, SmoothTransition)
{
	const auto chi = Cutoff::symmetric(1.0, 1.5);
	const double h = 2e-3;
	double worst = 0.0;
	for (double a = 0.95; a <= 1.55; a += 0.0037)
	{
		const double d4 = (chi(a + 2 * h) - 4 * chi(a + h) + 6 * chi(a) - 4 * chi(a - h) + chi(a - 2 * h)) /
		                  (h * h * h * h);
		ASSERT_TRUE(std::isfinite(d4));
		worst = std::max(worst, std::abs(d4));
	}
	EXPECT_LT(worst, 1e6);
}

TEST(Cutoff, BandForm)
{
	const auto chi = Cutoff::band(0.25, 0.5, 1.0, 1.25);
	EXPECT_EQ(chi(0.0), 0.0);
	EXPECT_EQ(chi(0.25), 0.0);
	EXPECT_EQ(chi(0.5), 1.0);
	EXPECT_EQ(chi(-0.75), 1.0);
	EXPECT_EQ(chi(1.0), 1.0);
	EXPECT_EQ(chi(1.25), 0.0);
	EXPECT_GT(chi(0.4), 0.0);
	EXPECT_LT(chi(0.4), 1.0);
	EXPECT_THROW(Cutoff::band(0.5, 0.25, 1.0, 1.25), PreconditionError);
}

TEST(KernelConfig, Validation)
{
	EXPECT_THROW(make_kernel_config(gauss4(), 0.01, 3.0, 0.5), PreconditionError);
	EXPECT_THROW(make_kernel_config(midpoint(), 0.0, 1.0, 0.5), PreconditionError);
	EXPECT_THROW(make_band_kernel_config(midpoint(), 0.01, 0.2, 1.0, 0.25), PreconditionError);
	const auto cfg = make_kernel_config(midpoint(), 0.01, 1.0, 0.5);
	EXPECT_NEAR(cfg.forward_cutoff.plateau(), midpoint().f(1.0), 0.0);
	EXPECT_NEAR(cfg.forward_cutoff.support(), midpoint().f(1.5), 0.0);
	EXPECT_NEAR(cfg.cone.inf, 0.64, 1e-10);
	EXPECT_NEAR(cfg.cone.sup, 1.0, 1e-10);
	EXPECT_DOUBLE_EQ(cfg.window_margin, 2.5);
}

// Reference values from 40-digit adaptive quadrature of the defining integrals.
TEST(Rho, MatchesHighPrecisionQuadrature)
{
	const auto cfg = make_kernel_config(midpoint(), 0.05, 1.0, 0.5);
	const Complex r = rho(cfg, 0.5, 0.3);
	EXPECT_NEAR(r.real(), -0.37432314362288286160, 1e-11);
	EXPECT_NEAR(r.imag(), 0.0, 1e-11);
	const Complex v = q(cfg, 0.3, 0.5);
	EXPECT_NEAR(v.real(), -2.5347037508711484306, 1e-11);
	EXPECT_NEAR(v.imag(), 0.0, 1e-11);
}

TEST(Rho, WithoutCutoffAtTimeZeroIsGridDelta)
{
	const double tau = 0.01;
	for (const Scheme &s : {midpoint(), gauss4()})
		for (long long k = -4; k <= 4; ++k)
		{
			const Complex v = rho_without_cutoff(s, tau, 0.0, k * tau);
			EXPECT_NEAR(std::abs(v - Complex(k == 0 ? 1.0 / tau : 0.0)), 0.0, 1e-9) << s.name() << " " << k;
		}
}

TEST(Rho, RealAndEvenUnderJointReflection)
{
	const auto cfg = make_kernel_config(gauss4(), 0.02, 1.0, 0.5);
	for (double t : {0.0, 0.4, 1.1})
		for (double s : {0.1, 0.5, 1.7})
		{
			const Complex r = rho(cfg, t, s);
			EXPECT_NEAR(r.imag(), 0.0, 1e-10);
			EXPECT_NEAR(std::abs(rho(cfg, -t, -s) - r), 0.0, 1e-10);
		}
	for (double t : {0.2, 0.9})
		for (double s : {0.3, 1.2})
		{
			const Complex v = q(cfg, t, s);
			EXPECT_NEAR(v.imag(), 0.0, 1e-10);
			EXPECT_NEAR(std::abs(q(cfg, -t, -s) - v), 0.0, 1e-10);
		}
}

TEST(Rho, RowMatchesPointwise)
{
	const auto cfg = make_kernel_config(newmark(0.1), 0.02, 1.0, 0.4);
	const std::vector<double> s{-0.5, 0.0, 0.35, 0.8, 1.6};
	const auto row = rho_row(cfg, 0.7, s);
	for (std::size_t i = 0; i < s.size(); ++i)
		EXPECT_NEAR(std::abs(row[i] - rho(cfg, 0.7, s[i])), 0.0, 1e-10);
	const auto col = q_column(cfg, s, 0.6);
	for (std::size_t i = 0; i < s.size(); ++i)
		EXPECT_NEAR(std::abs(col[i] - q(cfg, s[i], 0.6)), 0.0, 1e-10);
}

TEST(Rho, SpectralMultiplierIdentity)
{
	for (const Scheme &sch : {midpoint(), gauss4()})
	{
		auto cfg = make_kernel_config(sch, 0.01, 1.0, 0.5);
		cfg.window_margin = 10 * cfg.eps;
		for (double t : {0.0, 0.3, 1.0})
		{
			const auto grid = sample_rho(cfg, t);
			for (int m = 0; m < 33; ++m)
			{
				const double a = -3.0 + 6.0 * m / 32;
				const double chi = cfg.forward_cutoff(a);
				const Complex expected =
				    chi == 0.0 ? Complex{} : std::polar(chi, -inverse_g(sch, a, 1.5) * t / cfg.tau);
				EXPECT_NEAR(std::abs(dft(grid, a / cfg.tau) - expected), 0.0, 1e-8) << sch.name() << " t=" << t;
			}
		}
	}
}

TEST(Q, ContinuousFourierTransform)
{
	const auto cfg = make_kernel_config(midpoint(), 0.02, 1.0, 0.5);
	const double s = 0.6;
	const auto [t_lo, t_hi] = reverse_window(cfg, s);
	const double w = (cfg.delta + cfg.eps) / cfg.tau + 60.0;
	const double pad = 6.0;
	const auto rule = composite_gauss_legendre(t_lo - pad, t_hi + pad,
	                                           static_cast<int>((t_hi - t_lo + 2 * pad) * w / (2 * pi)) + 1, 16);
	const auto col = q_column(cfg, rule.nodes, s);
	for (double mu : {-60.0, -30.0, 0.0, 12.0, 49.0, 55.0})
	{
		Complex acc{};
		for (std::size_t m = 0; m < rule.size(); ++m)
			acc += rule.weights[m] * col[m] * std::polar(1.0, mu * rule.nodes[m]);
		const double a = mu * cfg.tau;
		const Complex expected = cfg.reverse_cutoff(a) * std::polar(1.0, midpoint().f(a) * s / cfg.tau);
		EXPECT_NEAR(std::abs(acc - expected), 0.0, 1e-8) << mu;
	}
}

TEST(Q, ExactPhaseIsTranslationInvariant)
{
	const auto cfg = make_kernel_config(exact_phase(), 0.02, 1.0, 0.5);
	for (double c : {0.1, 0.37, -0.5})
		for (double t : {0.0, 0.3})
			for (double s : {0.1, 0.45})
				EXPECT_NEAR(std::abs(q(cfg, t + c, s + c) - q(cfg, t, s)), 0.0, 1e-10);
}

TEST(Forward, SingleModeAndIdentityAtZero)
{
	auto spec = make_transport_spectrum(64);
	const auto cfg = make_kernel_config(midpoint(), 0.01, 1.0, 0.5);
	const State y = single_mode(spec, 1);
	const State out = transmute_forward(cfg, y, 0.7);
	EXPECT_LE(relative_error(out, evolve_continuous(y, 0.7)), 1e-6);

	const State z = random_filtered(spec, 0.01, 1.0, 3);
	EXPECT_LE(relative_error(transmute_forward(cfg, z, 0.0), z), 1e-6);
}

TEST(Forward, Linearity)
{
	auto spec = make_transport_spectrum(20);
	const auto cfg = make_kernel_config(gauss4(), 0.02, 1.0, 0.5);
	const State a = random_filtered(spec, 0.02, 1.0, 5), b = random_filtered(spec, 0.02, 1.0, 6);
	const Complex ca(0.5, 1.0), cb(-2.0, 0.25);
	const State lhs = transmute_forward(cfg, ca * a + cb * b, 0.45);
	const State rhs = ca * transmute_forward(cfg, a, 0.45) + cb * transmute_forward(cfg, b, 0.45);
	EXPECT_LT(relative_error(lhs, rhs), 1e-12);
}

TEST(Forward, RejectsUnfilteredInput)
{
	auto spec = make_transport_spectrum(64);
	const auto cfg = make_kernel_config(midpoint(), 0.01, 1.0, 0.5);
	EXPECT_THROW(transmute_forward(cfg, single_mode(spec, 20), 0.3), UnfilteredInput);
}

TEST(Forward, KernelReproducesEachFilteredMode)
{
	auto spec = make_transport_spectrum(30);
	const auto cfg = make_kernel_config(newmark(0.2), 0.01, 1.0, 0.5);
	const double t = 0.55;
	const auto grid = sample_rho(cfg, t);
	for (std::size_t j = 0; j < spec->size(); ++j)
	{
		const double mu = spec->frequency(j);
		if (std::abs(mu) * cfg.tau > cfg.delta)
			continue;
		const double phase = cfg.scheme.f(mu * cfg.tau);
		Complex s{};
		for (std::size_t i = 0; i < grid.values.size(); ++i)
			s += grid.values[i] * std::polar(1.0, phase * static_cast<double>(grid.k_min + static_cast<long long>(i)));
		EXPECT_NEAR(std::abs(cfg.tau * s - std::polar(1.0, mu * t)), 0.0, 1e-6) << mu;
	}
}

TEST(Forward, DoublingWindowStaysWithinTailEstimate)
{
	auto spec = make_transport_spectrum(64);
	auto cfg = make_kernel_config(midpoint(), 0.01, 1.0, 0.5);
	const State y = random_filtered(spec, 0.01, 1.0, 9);
	for (double t : {0.2, 0.8})
	{
		const auto base = transmute_forward_detailed(cfg, y, t);
		auto wide = cfg;
		wide.window_margin *= 2;
		const auto more = transmute_forward_detailed(wide, y, t);
		EXPECT_LE(relative_error(more.state, base.state), base.tail_estimate) << t;
		EXPECT_LT(base.tail_estimate, 1e-3);
	}
}

TEST(Reverse, IdentityAtZeroAndSingleMode)
{
	auto spec = make_transport_spectrum(64);
	const auto cfg = make_kernel_config(midpoint(), 0.01, 1.0, 0.5);
	const State y = random_filtered(spec, 0.01, 1.0, 4);
	EXPECT_LE(relative_error(transmute_reverse(cfg, y, 0), y), 1e-6);

	const State m = single_mode(spec, 1);
	const State out = transmute_reverse(cfg, m, 50);
	const Complex expected = std::polar(1.0, midpoint().f(0.02 * pi) * 50);
	EXPECT_NEAR(std::abs(out[65] - expected), 0.0, 1e-6);
}

TEST(Reverse, BandVariant)
{
	auto spec = make_transport_spectrum(64);
	const double tau = 0.01;
	auto cfg = make_band_kernel_config(midpoint(), tau, 0.5, 1.0, 0.25);
	// The narrow inner transition slows the off-cone decay, so the window is widened.
	cfg.window_margin = 20 * cfg.eps;
	State y = random_filtered(spec, tau, 1.0, 8);
	y = filter(y, FilterBand(0.5 / tau, 1.0 / tau));
	ASSERT_GT(y.norm(), 0.0);
	for (long long k : {1LL, 10LL, 100LL})
		EXPECT_LE(relative_error(transmute_reverse(cfg, y, k), evolve_discrete(y, k, midpoint(), tau)), 1e-6) << k;
	EXPECT_THROW(transmute_reverse(cfg, single_mode(spec, 1), 3), UnfilteredInput);
}

TEST(Reverse, RoundTripThroughForward)
{
	auto spec = make_transport_spectrum(40);
	const auto cfg = make_kernel_config(gauss4(), 0.01, 1.0, 0.5);
	const State y = random_filtered(spec, 0.01, 1.0, 12);
	// The continuous trajectory rebuilt from the discrete one at t = 0, pushed back to step k.
	const State y0 = transmute_forward(cfg, y, 0.0);
	EXPECT_LE(relative_error(transmute_reverse(cfg, y0, 25), evolve_discrete(y, 25, gauss4(), 0.01)), 2e-6);
}

TEST(Decay, OffConeSlopes)
{
	const std::vector<double> taus{0.02, 0.01, 0.005, 0.0025};
	const auto pr = decay_profile(midpoint(), 1.0, 0.5, taus, 0.2, 2.0, KernelKind::Rho);
	EXPECT_GE(pr.slope, 3.0);
	EXPECT_GE(pr.points_used, 2u);
	const auto pq = decay_profile(midpoint(), 1.0, 0.5, taus, 2.0, 0.5, KernelKind::Q);
	EXPECT_GE(pq.slope, 3.0);
	EXPECT_THROW(decay_profile(midpoint(), 1.0, 0.5, taus, 1.0, 1.0, KernelKind::Rho), PointInsideCone);
	EXPECT_THROW(decay_profile(midpoint(), 1.0, 0.5, taus, 1.0, 1.0, KernelKind::Q), PointInsideCone);
}

TEST(OperatorNorms, BelowClosedFormBounds)
{
	const auto cfg = make_kernel_config(midpoint(), 0.02, 1.0, 0.5);
	const auto r = operator_norm_check(cfg, 20, 42);
	EXPECT_DOUBLE_EQ(r.forward_bound, 1.0);
	EXPECT_NEAR(r.reverse_bound, 1.0 / std::sqrt(midpoint().f_prime(1.5)), 1e-10);
	EXPECT_LE(r.forward_measured, r.forward_bound * (1 + 1e-6));
	EXPECT_LE(r.reverse_measured, r.reverse_bound * (1 + 1e-6));
	EXPECT_LE(r.forward_top_singular, r.forward_bound * (1 + 1e-6));
	EXPECT_LE(r.reverse_top_singular, r.reverse_bound * (1 + 1e-6));
	EXPECT_GE(r.forward_top_singular, r.forward_measured);
}

TEST(Determinism, IndependentOfThreadCount)
{
	const auto cfg = make_kernel_config(midpoint(), 0.01, 1.0, 0.5);
	auto spec = make_transport_spectrum(64);
	const State y = random_filtered(spec, 0.01, 1.0, 21);
	::setenv("TRANSMUTE_THREADS", "1", 1);
	const State a = transmute_forward(cfg, y, 0.5);
	::setenv("TRANSMUTE_THREADS", "4", 1);
	const State b = transmute_forward(cfg, y, 0.5);
	::unsetenv("TRANSMUTE_THREADS");
	for (std::size_t j = 0; j < a.size(); ++j)
		EXPECT_EQ(a[j], b[j]);
}
