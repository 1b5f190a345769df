// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "transmute/discrete_fourier.hpp"
#include "transmute/kernels.hpp"
#include "transmute/observability.hpp"
#include "transmute/packet.hpp"
#include "transmute/scheme.hpp"
#include "transmute/spectrum.hpp"

using namespace transmute;

namespace
{
	constexpr double pi = std::numbers::pi;

	struct Outcome
	{
		bool pass = false;
		std::string detail;
	};

	std::string fmt(const char *f, auto... args)
	{
		char buf[512];
		std::snprintf(buf, sizeof buf, f, args...);
		return buf;
	}

	State random_filtered(SpectrumPtr spec, double tau, double delta, std::uint64_t seed)
	{
		std::mt19937_64 rng(seed);
		std::normal_distribution<double> nd;
		State s(std::move(spec));
		for (std::size_t j = 0; j < s.size(); ++j)
			s[j] = Complex(nd(rng), nd(rng));
		return filter(s, FilterBand::upto(delta / tau));
	}

	const std::vector<double> coarse_ladder{0.05, 0.025, 0.0125, 0.00625};

	// Ratios value(i) / value(i + 2) of a ladder refined by halving: one quartering of tau each.
	std::vector<double> quartering_ratios(const std::vector<double> &v, bool growth)
	{
		std::vector<double> r;
		for (std::size_t i = 0; i + 2 < v.size(); ++i)
			r.push_back(growth ? v[i + 2] / v[i] : v[i] / v[i + 2]);
		return r;
	}

	std::string join(const std::vector<double> &v, const char *f = "%.4g")
	{
		std::string s;
		for (std::size_t i = 0; i < v.size(); ++i)
			s += (i ? ", " : "") + fmt(f, v[i]);
		return s;
	}

	Outcome forward_formula()
	{
		auto spec = make_transport_spectrum(64);
		const double tau = 0.01, delta = 1.0;
		const State y0 = random_filtered(spec, tau, delta, 2024);
		bool ok = true;
		std::string detail;
		for (const Scheme &s : {midpoint(), gauss4(), newmark(0.2)})
		{
			const auto start = std::chrono::steady_clock::now();
			const auto cfg = make_kernel_config(s, tau, delta, 0.5);
			double worst = 0.0;
			for (int i = 1; i <= 9; ++i)
			{
				const double t = 0.1 * i;
				worst = std::max(worst, relative_error(transmute_forward(cfg, y0, t), evolve_continuous(y0, t)));
			}
			const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
			ok = ok && worst <= 1e-6 && secs <= 60.0;
			detail += fmt("%s%s err %.2e in %.1f s", detail.empty() ? "" : "; ", s.name().c_str(), worst, secs);
		}
		return {ok, detail};
	}

	Outcome reverse_formula()
	{
		auto spec = make_transport_spectrum(64);
		const double tau = 0.01, delta = 1.0;
		const State y0 = random_filtered(spec, tau, delta, 2024);
		bool ok = true;
		std::string detail;
		for (const Scheme &s : {midpoint(), gauss4(), newmark(0.2)})
		{
			const auto cfg = make_kernel_config(s, tau, delta, 0.5);
			double worst = 0.0;
			for (long long k : {1LL, 10LL, 100LL})
				worst = std::max(worst,
				                 relative_error(transmute_reverse(cfg, y0, k), evolve_discrete(y0, k, s, tau)));
			ok = ok && worst <= 1e-6;
			detail += fmt("%s%s err %.2e", detail.empty() ? "" : "; ", s.name().c_str(), worst);
		}
		return {ok, detail};
	}

	Outcome multiplier_identity()
	{
		double worst = 0.0;
		for (const Scheme &sch : {midpoint(), gauss4(), newmark(0.2)})
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
					worst = std::max(worst, std::abs(dft(grid, a / cfg.tau) - expected));
				}
			}
		}
		return {worst <= 1e-8, fmt("max deviation %.2e over 3 schemes, tau 0.01, margin 10 eps", worst)};
	}

	Outcome localization()
	{
		const std::vector<double> taus{0.02, 0.01, 0.005, 0.0025};
		const auto r = decay_profile(midpoint(), 1.0, 0.5, taus, 0.2, 2.0, KernelKind::Rho);
		const auto q = decay_profile(midpoint(), 1.0, 0.5, taus, 2.0, 0.5, KernelKind::Q);
		return {r.slope >= 3.0 && q.slope >= 3.0 && r.points_used >= 2 && q.points_used >= 2,
		        fmt("rho slope %.2f at (0.2, 2.0) on %zu points; q slope %.2f at (2.0, 0.5) on %zu points", r.slope,
		            r.points_used, q.slope, q.points_used)};
	}

	Outcome operator_norms()
	{
		const auto cfg = make_kernel_config(midpoint(), 0.02, 1.0, 0.5);
		const auto r = operator_norm_check(cfg, 100, 7);
		const bool ok = r.forward_measured <= r.forward_bound + 1e-6 && r.reverse_measured <= r.reverse_bound + 1e-6;
		return {ok, fmt("I: %.4f <= %.4f, J: %.4f <= %.4f (top singular values %.4f, %.4f)", r.forward_measured,
		                r.forward_bound, r.reverse_measured, r.reverse_bound, r.forward_top_singular,
		                r.reverse_top_singular)};
	}

	double identity_deviation(const GramianResult &g)
	{
		double d = 0.0;
		for (Eigen::Index i = 0; i < g.matrix.rows(); ++i)
			for (Eigen::Index j = 0; j < g.matrix.cols(); ++j)
				d = std::max(d, std::abs(g.matrix(i, j) - Complex(i == j ? 1.0 : 0.0)));
		return d;
	}

	Outcome gramian_identity()
	{
		auto spec = make_transport_spectrum(64);
		const auto obs = point_obs_transport(*spec);
		const double c = identity_deviation(continuous_gramian(*spec, obs, FilterBand::upto(1e9), 1.0));
		const int K = 64;
		const double tau = 1.0 / K;
		auto small = make_transport_spectrum(10);
		const double d = identity_deviation(discrete_gramian(*small, point_obs_transport(*small), exact_phase(), tau,
		                                                     1.0, FilterBand::upto(3.0 / tau)));
		return {c <= 1e-12 && d <= 1e-12,
		        fmt("continuous N=64: %.1e; discrete exact phase tau=1/%d on 21 modes: %.1e", c, K, d)};
	}

	std::vector<double> c_obs_column(double T)
	{
		std::vector<double> c;
		for (const auto &r : uniformity_sweep(transport_family(), midpoint(), 2.0, T, coarse_ladder))
			c.push_back(r.c_obs);
		return c;
	}

	Outcome uniform_above()
	{
		const double threshold = uniform_time_threshold(midpoint(), 2.0, 1.0);
		const auto start = std::chrono::steady_clock::now();
		const auto c = c_obs_column(2.4);
		const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
		const double var = relative_variation(c);
		return {std::abs(threshold - 2.0) < 1e-12 && var < 0.5 && secs <= 300.0,
		        fmt("threshold %.6g; C_obs = %s; variation %.3f; %.1f s", threshold, join(c).c_str(), var, secs)};
	}

	Outcome sharpness_below()
	{
		const auto c = c_obs_column(1.6);
		const auto ratios = quartering_ratios(c, true);
		bool growth = true;
		for (double r : ratios)
			growth = growth && r > 2.0;

		const double delta = 1.0, x0 = 0.3, ball = 0.25;
		const double t_norm = 1e-4;
		const auto p = sharpness_packet(make_transport_spectrum(packet_modes(t_norm, delta)), t_norm, delta, x0);
		const double norm_ratio = p.norm() * p.norm() * 2 * pi;
		const std::vector<double> taus{1e-4, 1e-5, 1e-6};
		std::vector<double> mass;
		for (double tau : taus)
		{
			const auto q = sharpness_packet(make_transport_spectrum(packet_modes(tau, delta)), tau, delta, x0);
			mass.push_back(outside_mass(q, tau, delta, x0, ball));
		}
		const double slope = fit_loglog_slope(taus, mass);
		const bool packet_ok = std::abs(norm_ratio - 1.0) <= 0.05 && slope >= 3.5;
		return {growth && packet_ok,
		        fmt("T=1.6: C_obs = %s, quartering ratios %s (need > 2); packet 2 pi |y0|^2 = %.6f, outside mass %s, "
		            "slope %.2f",
		            join(c).c_str(), join(ratios).c_str(), norm_ratio, join(mass, "%.2e").c_str(), slope)};
	}

	Outcome ingham()
	{
		std::vector<double> stable, collapse;
		for (double tau : coarse_ladder)
		{
			const auto f = lattice_frequencies(tau, 1.0);
			stable.push_back(ingham_bounds(f, 2 * pi, midpoint(), tau, 1.0, 1.5).c_lower);
			collapse.push_back(ingham_bounds(f, 2 * pi, midpoint(), tau, 1.0, 1.0).c_lower);
		}
		const double threshold = uniform_time_threshold(midpoint(), 1.0, 1.0);
		const auto ratios = quartering_ratios(collapse, false);
		bool collapsing = true;
		for (double r : ratios)
			collapsing = collapsing && r > 2.0;
		const double var = relative_variation(stable);
		return {std::abs(threshold - 1.25) < 1e-12 && var < 0.5 && collapsing,
		        fmt("threshold %.4g; T=1.5 lower bounds %s (variation %.3f); T=1.0 lower bounds %s, ratios %s",
		            threshold, join(stable).c_str(), var, join(collapse).c_str(), join(ratios).c_str())};
	}

	Outcome parseval_inversion()
	{
		double worst_p = 0.0, worst_i = 0.0;
		for (std::uint64_t seed = 0; seed < 100; ++seed)
		{
			std::mt19937_64 rng(seed);
			std::normal_distribution<double> nd;
			GridFunction u{0.01, -32, {}};
			for (int i = 0; i < 64; ++i)
				u.values.emplace_back(nd(rng), nd(rng));
			const int nodes = default_quad_nodes(u);
			const auto p = parseval_check(u, nodes);
			worst_p = std::max(worst_p, std::abs(p.lhs - p.rhs) / p.rhs);
			auto v = [&](double mu) { return dft(u, mu); };
			for (long long k = u.k_min; k <= u.k_max(); ++k)
				worst_i = std::max(worst_i, std::abs(idft(v, u.tau, k, nodes) - u.at(k)));
		}
		return {worst_p <= 1e-10 && worst_i <= 1e-10,
		        fmt("Parseval relative %.1e, inversion %.1e over 100 seeds", worst_p, worst_i)};
	}

	Outcome weak_observability()
	{
		const double x0 = std::sqrt(2.0) - 1.0;
		const auto lv = liouville_check(x0, -2.0, 10000);
		std::vector<double> lam;
		for (const auto &r : weak_obs_sweep(newmark(0.25), x0, 1.0, 2.6, coarse_ladder))
			lam.push_back(r.lambda_min);
		const double var = relative_variation(lam);
		return {lv.pass && var < 0.5,
		        fmt("Liouville %s (C = %.6g); lambda_min = %s, variation %.4f", lv.pass ? "pass" : "fail", lv.constant,
		            join(lam).c_str(), var)};
	}

	Outcome certification()
	{
		struct Case
		{
			Scheme scheme;
			double delta;
		};
		const std::vector<Case> cases{
		    {midpoint(), 3.0}, {gauss4(), 3.4}, {newmark(0.0), 1.9}, {newmark(0.1), 2.45}, {newmark(0.25), 3.0}};
		bool ok = true;
		std::string detail;
		for (const auto &c : cases)
		{
			const bool pass = certify(c.scheme, c.delta, 4096).all_pass();
			ok = ok && pass;
			detail += fmt("%s@%g %s; ", c.scheme.name().c_str(), c.delta, pass ? "pass" : "FAIL");
		}
		const Scheme id("identity", std::numeric_limits<double>::infinity(), [](double a) { return a; },
		                [](double) { return 1.0; }, [](double) { return 0.0; });
		const auto rep = certify(id, 4.0, 4096);
		const auto &range = rep.check("range");
		const bool id_ok = !range.pass && std::abs(std::abs(range.worst_alpha) - pi) <= 1e-9 &&
		                   rep.check("consistency").pass && rep.check("oddness").pass &&
		                   rep.check("monotonicity").pass;
		detail += fmt("identity range failure at |alpha| = %.12f", std::abs(range.worst_alpha));
		return {ok && id_ok, detail};
	}
} // namespace

int main()
{
	const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
	    {"forward representation vs continuous evolution", forward_formula},
	    {"reverse representation vs discrete evolution", reverse_formula},
	    {"spectral multiplier of the forward kernel", multiplier_identity},
	    {"off-cone kernel decay", localization},
	    {"operator norm bounds", operator_norms},
	    {"Gramian identity at T = 1", gramian_identity},
	    {"uniform observability above threshold", uniform_above},
	    {"blow-up below threshold and packet concentration", sharpness_below},
	    {"discrete Ingham frame bounds", ingham},
	    {"Parseval and inversion", parseval_inversion},
	    {"weak observability at an irrational point", weak_observability},
	    {"dispersion hypothesis certification", certification},
	};
	int failures = 0;
	for (std::size_t i = 0; i < criteria.size(); ++i)
	{
		Outcome o;
		try
		{
			o = criteria[i].second();
		}
		catch (const std::exception &e)
		{
			o = {false, std::string("exception: ") + e.what()};
		}
		failures += !o.pass;
		std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
		std::fflush(stdout);
	}
	return failures ? 1 : 0;
}
