#include "transmute/scheme.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "transmute/error.hpp"

namespace transmute
{
	namespace
	{
		constexpr double pi = std::numbers::pi;
		constexpr double inf = std::numeric_limits<double>::infinity();

		std::string fmt(double x)
		{
			char buf[32];
			const auto res = std::to_chars(buf, buf + sizeof buf, x);
			return std::string(buf, res.ptr);
		}
	} // namespace

	Scheme::Scheme(std::string name, double radius, RealFunction f, RealFunction f_prime, RealFunction f_second)
	    : name_(std::move(name)), radius_(radius), f_(std::move(f)), f_prime_(std::move(f_prime)),
	      f_second_(std::move(f_second))
	{
		if (!(radius_ > 0.0))
			throw PreconditionError("scheme radius must be positive");
		if (!f_ || !f_prime_ || !f_second_)
			throw PreconditionError("scheme needs f, f' and f''");
	}

	Scheme Scheme::from_function(std::string name, double radius, RealFunction f)
	{
		auto fp = [f](double a) {
			constexpr double h = 1e-6;
			return (f(a + h) - f(a - h)) / (2.0 * h);
		};
		auto fpp = [f](double a) {
			constexpr double h = 1e-4;
			return (f(a + h) - 2.0 * f(a) + f(a - h)) / (h * h);
		};
		return Scheme(std::move(name), radius, f, fp, fpp);
	}

	void Scheme::check_domain(double alpha) const
	{
		if (!(std::abs(alpha) < radius_))
			throw PreconditionError("alpha = " + fmt(alpha) + " outside the domain (-R, R) of scheme " + name_ +
			                        ", R = " + fmt(radius_));
	}

	double Scheme::f(double alpha) const
	{
		check_domain(alpha);
		return f_(alpha);
	}

	double Scheme::f_prime(double alpha) const
	{
		check_domain(alpha);
		return f_prime_(alpha);
	}

	double Scheme::f_second(double alpha) const
	{
		check_domain(alpha);
		return f_second_(alpha);
	}

	Scheme midpoint()
	{
		return Scheme(
		    "midpoint", inf, [](double a) { return 2.0 * std::atan(0.5 * a); },
		    [](double a) { return 1.0 / (1.0 + 0.25 * a * a); },
		    [](double a) {
			    const double d = 1.0 + 0.25 * a * a;
			    return -0.5 * a / (d * d);
		    });
	}

	Scheme gauss4()
	{
		return Scheme(
		    "gauss4", 2.0 * std::sqrt(3.0), [](double a) { return 2.0 * std::atan2(6.0 * a, 12.0 - a * a); },
		    [](double a) {
			    const double a2 = a * a;
			    return 12.0 * (12.0 + a2) / (a2 * a2 + 12.0 * a2 + 144.0);
		    },
		    [](double a) {
			    const double a2 = a * a;
			    const double n = 12.0 * (12.0 + a2);
			    const double d = a2 * a2 + 12.0 * a2 + 144.0;
			    return (24.0 * a * d - n * (4.0 * a2 * a + 24.0 * a)) / (d * d);
		    });
	}

	Scheme newmark(double beta)
	{
		if (!(beta >= 0.0 && beta <= 0.25))
			throw PreconditionError("newmark beta must lie in [0, 1/4], got " + fmt(beta));
		const double c = beta - 0.25;
		const double radius = c == 0.0 ? inf : 2.0 / std::sqrt(1.0 - 4.0 * beta);
		return Scheme(
		    "newmark:" + fmt(beta), radius,
		    [c](double a) { return 2.0 * std::atan(0.5 * a / std::sqrt(1.0 + c * a * a)); },
		    [c, beta](double a) {
			    const double a2 = a * a;
			    return 1.0 / (std::sqrt(1.0 + c * a2) * (1.0 + beta * a2));
		    },
		    [c, beta](double a) {
			    const double a2 = a * a;
			    const double r = std::sqrt(1.0 + c * a2);
			    const double h = r * (1.0 + beta * a2);
			    const double dh = c * a * (1.0 + beta * a2) / r + 2.0 * beta * a * r;
			    return -dh / (h * h);
		    });
	}

	Scheme exact_phase()
	{
		return Scheme(
		    "exact", pi, [](double a) { return a; }, [](double) { return 1.0; }, [](double) { return 0.0; });
	}

	Scheme parse_scheme(std::string_view name)
	{
		if (name == "midpoint")
			return midpoint();
		if (name == "gauss4")
			return gauss4();
		if (name == "exact")
			return exact_phase();
		constexpr std::string_view prefix = "newmark:";
		if (name.starts_with(prefix))
		{
			const std::string num(name.substr(prefix.size()));
			std::size_t used = 0;
			double beta = 0.0;
			try
			{
				beta = std::stod(num, &used);
			}
			catch (const std::exception &)
			{
				used = 0;
			}
			if (used == 0 || used != num.size())
				throw PreconditionError("cannot parse newmark beta in '" + std::string(name) + "'");
			return newmark(beta);
		}
		throw PreconditionError("unknown scheme '" + std::string(name) +
		                        "' (expected midpoint, gauss4, newmark:<beta> or exact)");
	}

	double inverse_g(const Scheme &scheme, double y, double delta)
	{
		if (!(delta > 0.0) || !scheme.in_domain(delta))
			throw PreconditionError("inverse_g needs 0 < delta < R");
		const double fmax = scheme.f(delta);
		const double fmin = scheme.f(-delta);
		if (y > fmax || y < fmin)
			throw TargetOutOfRange("y = " + fmt(y) + " outside f([-delta, delta]) = [" + fmt(fmin) + ", " +
			                       fmt(fmax) + "]");
		if (y == fmax)
			return delta;
		if (y == fmin)
			return -delta;

		double lo = -delta, hi = delta;
		double a = std::clamp(y, lo, hi);
		for (int it = 0; it < 200; ++it)
		{
			const double r = scheme.f(a) - y;
			if (r == 0.0)
				return a;
			if (r > 0.0)
				hi = a;
			else
				lo = a;
			const double d = scheme.f_prime(a);
			double next = a - r / d;
			if (!(next > lo && next < hi))
				next = 0.5 * (lo + hi);
			const double step = std::abs(next - a);
			a = next;
			if (step <= 1e-16 * std::max(1.0, std::abs(a)) || hi - lo <= 4e-16 * std::max(1.0, std::abs(a)))
				break;
		}
		return a;
	}

	namespace
	{
		template <class Better>
		double golden_extreme(const Scheme &s, double a, double b, Better better)
		{
			const double g = 0.5 * (std::sqrt(5.0) - 1.0);
			double x1 = b - g * (b - a), x2 = a + g * (b - a);
			double f1 = s.f_prime(x1), f2 = s.f_prime(x2);
			for (int it = 0; it < 200 && b - a > 1e-12; ++it)
			{
				if (better(f1, f2))
				{
					b = x2;
					x2 = x1;
					f2 = f1;
					x1 = b - g * (b - a);
					f1 = s.f_prime(x1);
				}
				else
				{
					a = x1;
					x1 = x2;
					f1 = f2;
					x2 = a + g * (b - a);
					f2 = s.f_prime(x2);
				}
			}
			return better(f1, f2) ? f1 : f2;
		}
	} // namespace

	FPrimeExtremes band_inf_sup_fprime(const Scheme &scheme, double delta, int samples)
	{
		if (!(delta > 0.0) || !scheme.in_domain(delta))
			throw PreconditionError("band extremes need 0 < delta < R (delta = " + fmt(delta) + ", R = " +
			                        fmt(scheme.radius()) + ")");
		samples = std::max(samples, 8);
		const double h = 2.0 * delta / samples;
		std::vector<double> v(samples + 1);
		for (int i = 0; i <= samples; ++i)
			v[i] = scheme.f_prime(i == samples ? delta : -delta + i * h);

		const auto imin = static_cast<int>(std::min_element(v.begin(), v.end()) - v.begin());
		const auto imax = static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
		auto node = [&](int i) { return i >= samples ? delta : -delta + i * h; };

		FPrimeExtremes out{v[imin], v[imax]};
		const double lo_min = node(std::max(imin - 1, 0)), hi_min = node(std::min(imin + 1, samples));
		const double lo_max = node(std::max(imax - 1, 0)), hi_max = node(std::min(imax + 1, samples));
		out.inf = std::min(out.inf, golden_extreme(scheme, lo_min, hi_min, std::less<double>{}));
		out.sup = std::max(out.sup, golden_extreme(scheme, lo_max, hi_max, std::greater<double>{}));
		return out;
	}

	double uniform_time_threshold(const Scheme &scheme, double delta, double t0)
	{
		if (!(t0 > 0.0))
			throw PreconditionError("T0 must be positive");
		return t0 / band_inf_sup_fprime(scheme, delta).inf;
	}

	bool HypothesisReport::all_pass() const
	{
		return std::all_of(checks.begin(), checks.end(), [](const HypothesisCheck &c) { return c.pass; });
	}

	const HypothesisCheck &HypothesisReport::check(std::string_view name) const
	{
		for (const auto &c : checks)
			if (c.name == name)
				return c;
		throw PreconditionError("no hypothesis check named '" + std::string(name) + "'");
	}

	namespace
	{
		// First alpha in [good, bad] (same sign) with |f(alpha)| >= pi.
		double locate_range_exit(const Scheme &s, double good, double bad)
		{
			for (int it = 0; it < 200; ++it)
			{
				const double mid = 0.5 * (good + bad);
				if (mid == good || mid == bad)
					break;
				if (std::abs(s.f(mid)) >= pi)
					bad = mid;
				else
					good = mid;
			}
			return bad;
		}
	} // namespace

	HypothesisReport certify(const Scheme &scheme, double delta, int samples, std::uint64_t seed)
	{
		if (!(delta > 0.0) || !scheme.in_domain(delta))
			throw PreconditionError("certify needs 0 < delta < R (delta = " + fmt(delta) + ", R = " +
			                        fmt(scheme.radius()) + ")");
		samples = std::max(samples, 8);

		// Uniform grid on [0, delta]; the negative side is reached through the
		// oddness check and the random points.
		std::vector<double> grid;
		grid.reserve(samples + 1 + samples / 4);
		for (int i = 0; i <= samples; ++i)
			grid.push_back(i == samples ? delta : delta * i / samples);
		std::mt19937_64 rng(seed);
		std::uniform_real_distribution<double> uni(-delta, delta);
		std::vector<double> random_pts(samples / 4);
		for (auto &a : random_pts)
			a = uni(rng);

		HypothesisReport rep;
		rep.scheme = scheme.name();
		rep.delta = delta;
		rep.samples = static_cast<int>(grid.size() + random_pts.size());

		{
			HypothesisCheck c{"consistency", true, 0.0, 0.0, {}};
			const double f0 = scheme.f(0.0);
			const double fp0 = scheme.f_prime(0.0);
			c.worst_value = std::max(std::abs(f0), std::abs(fp0 - 1.0));
			c.pass = c.worst_value <= 1e-10;
			c.detail = "f(0) = " + fmt(f0) + ", f'(0) = " + fmt(fp0);
			rep.checks.push_back(c);
		}
		{
			HypothesisCheck c{"oddness", true, 0.0, 0.0, {}};
			auto probe = [&](double a) {
				const double e = std::abs(scheme.f(a) + scheme.f(-a));
				if (e > c.worst_value)
				{
					c.worst_value = e;
					c.worst_alpha = a;
				}
			};
			for (double a : grid)
				probe(a);
			for (double a : random_pts)
				probe(a);
			c.pass = c.worst_value <= 1e-12;
			c.detail = "max |f(a) + f(-a)| = " + fmt(c.worst_value);
			rep.checks.push_back(c);
		}
		{
			HypothesisCheck c{"range", true, 0.0, 0.0, {}};
			// Scan outwards on each side; the first sample with |f| >= pi brackets the exit.
			double exit_alpha = inf;
			for (int side : {+1, -1})
			{
				double prev = 0.0;
				for (double a0 : grid)
				{
					const double a = side * a0;
					const double v = std::abs(scheme.f(a));
					if (v > c.worst_value && c.pass)
					{
						c.worst_value = v;
						c.worst_alpha = a;
					}
					if (v >= pi)
					{
						const double e = locate_range_exit(scheme, prev, a);
						if (std::abs(e) < std::abs(exit_alpha))
							exit_alpha = e;
						break;
					}
					prev = a;
				}
			}
			for (double a : random_pts)
			{
				const double v = std::abs(scheme.f(a));
				if (v >= pi)
				{
					const double e = locate_range_exit(scheme, 0.0, a);
					if (std::abs(e) < std::abs(exit_alpha))
						exit_alpha = e;
				}
				else if (v > c.worst_value && std::isinf(exit_alpha))
				{
					c.worst_value = v;
					c.worst_alpha = a;
				}
			}
			if (!std::isinf(exit_alpha))
			{
				c.pass = false;
				c.worst_alpha = exit_alpha;
				c.worst_value = std::abs(scheme.f(exit_alpha));
				c.detail = "|f| reaches pi at |alpha| = " + fmt(std::abs(exit_alpha));
			}
			else
				c.detail = "max |f| = " + fmt(c.worst_value) + " < pi";
			rep.checks.push_back(c);
		}
		{
			HypothesisCheck c{"monotonicity", true, 0.0, inf, {}};
			auto probe = [&](double a) {
				const double v = scheme.f_prime(a);
				if (v < c.worst_value)
				{
					c.worst_value = v;
					c.worst_alpha = a;
				}
			};
			for (double a : grid)
			{
				probe(a);
				probe(-a);
			}
			for (double a : random_pts)
				probe(a);
			c.pass = c.worst_value > 0.0;
			c.detail = "min f' = " + fmt(c.worst_value);
			rep.checks.push_back(c);
		}
		return rep;
	}
} // namespace transmute
