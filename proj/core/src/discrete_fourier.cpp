#include "transmute/discrete_fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "transmute/error.hpp"
#include "transmute/quadrature.hpp"

namespace transmute
{
	std::complex<double> GridFunction::at(long long k) const
	{
		if (k < k_min || k > k_max())
			return {};
		return values[static_cast<std::size_t>(k - k_min)];
	}

	int default_quad_nodes(const GridFunction &u)
	{
		return std::max<int>(256, 8 * static_cast<int>(u.values.size()));
	}

	std::complex<double> dft(const GridFunction &u, double mu)
	{
		if (!(std::abs(mu) < std::numbers::pi / u.tau))
			throw PreconditionError("dft frequency outside the Nyquist band (-pi/tau, pi/tau)");
		std::complex<double> s{};
		const double phase = mu * u.tau;
		for (std::size_t i = 0; i < u.values.size(); ++i)
		{
			const double k = static_cast<double>(u.k_min + static_cast<long long>(i));
			s += u.values[i] * std::polar(1.0, -phase * k);
		}
		return u.tau * s;
	}

	namespace
	{
		// Periodic trapezoid over one Nyquist cell, offset by half a step so the
		// open endpoints -pi/tau and pi/tau are never sampled.
		QuadratureRule nyquist_rule(double tau, int n)
		{
			const double w = std::numbers::pi / tau, h = w / n;
			return periodic_trapezoid(-w + h, w + h, n);
		}
	} // namespace

	std::complex<double> idft(const std::function<std::complex<double>(double)> &v, double tau, long long k,
	                          int quad_nodes)
	{
		const auto rule = nyquist_rule(tau, quad_nodes);
		std::complex<double> s{};
		for (std::size_t m = 0; m < rule.size(); ++m)
			s += rule.weights[m] * v(rule.nodes[m]) * std::polar(1.0, rule.nodes[m] * tau * static_cast<double>(k));
		return s / (2.0 * std::numbers::pi);
	}

	ParsevalSides parseval_check(const GridFunction &u, int quad_nodes)
	{
		ParsevalSides out;
		for (const auto &x : u.values)
			out.rhs += std::norm(x);
		out.rhs *= u.tau;

		const auto rule = nyquist_rule(u.tau, quad_nodes);
		double s = 0.0;
		for (std::size_t m = 0; m < rule.size(); ++m)
			s += rule.weights[m] * std::norm(dft(u, rule.nodes[m]));
		out.lhs = s / (2.0 * std::numbers::pi);
		return out;
	}
} // namespace transmute
