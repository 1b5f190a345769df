#include "transmute/packet.hpp"

#include <cmath>
#include <numbers>

#include "transmute/error.hpp"
#include "transmute/quadrature.hpp"

namespace transmute
{
	namespace
	{
		constexpr double pi = std::numbers::pi;

		double raw_bump(double x)
		{
			return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
		}

		double bump_norm()
		{
			static const double norm = [] {
				const auto rule = composite_gauss_legendre(-1.0, 1.0, 64, 16);
				double s = 0.0;
				for (std::size_t i = 0; i < rule.size(); ++i)
					s += rule.weights[i] * raw_bump(rule.nodes[i]) * raw_bump(rule.nodes[i]);
				return std::sqrt(s);
			}();
			return norm;
		}
	} // namespace

	double unit_bump(double x)
	{
		return raw_bump(x) / bump_norm();
	}

	int packet_modes(double tau, double delta)
	{
		return static_cast<int>(std::floor((delta / tau + 1.0 / std::sqrt(tau)) / (2.0 * pi))) + 2;
	}

	State sharpness_packet(SpectrumPtr spectrum, double tau, double delta, double x0)
	{
		if (!(tau > 0.0) || !(delta > 0.0))
			throw PreconditionError("packet needs tau > 0 and delta > 0");
		if (!(x0 > 0.0 && x0 < 1.0))
			throw PreconditionError("packet centre x0 must lie in (0, 1)");
		const double reach = delta / tau + 1.0 / std::sqrt(tau);
		if (spectrum->max_abs_frequency() < reach)
			throw PreconditionError("spectrum truncation too small for the packet: need |mu| up to " +
			                        std::to_string(reach) + ", have " +
			                        std::to_string(spectrum->max_abs_frequency()) + " (N >= " +
			                        std::to_string(packet_modes(tau, delta)) + ")");
		State s(spectrum);
		const double st = std::sqrt(tau);
		const double amp = std::pow(tau, 0.25);
		for (std::size_t j = 0; j < s.size(); ++j)
		{
			const double mu = spectrum->frequency(j);
			const double chi = unit_bump(st * mu - delta / st);
			if (chi != 0.0)
				s[j] = amp * chi * std::polar(1.0, -mu * x0);
		}
		return s;
	}

	double outside_mass(const State &packet, double tau, double delta, double x0, double eps)
	{
		if (!(eps > 0.0 && eps < 0.5))
			throw PreconditionError("outside mass needs 0 < eps < 1/2");
		// Factor out the carrier exp(i mu_c x) so the quadrature only resolves the envelope.
		const double mu_c = 2.0 * pi * std::round(delta / (2.0 * pi * tau));
		std::vector<double> dmu;
		std::vector<Complex> a;
		const auto &spec = packet.spectrum();
		double span = 0.0;
		for (std::size_t j = 0; j < packet.size(); ++j)
			if (packet[j] != Complex{})
			{
				dmu.push_back(spec.frequency(j) - mu_c);
				a.push_back(packet[j]);
				span = std::max(span, std::abs(dmu.back()));
			}
		const double lo = x0 + eps, hi = x0 + 1.0 - eps;
		const int panels = std::max(400, static_cast<int>(std::ceil(span * (hi - lo) / (2.0 * pi) / 2.0)));
		const auto rule = composite_gauss_legendre(lo, hi, panels, 16);
		double mass = 0.0;
		for (std::size_t m = 0; m < rule.size(); ++m)
		{
			Complex y{};
			for (std::size_t i = 0; i < a.size(); ++i)
				y += a[i] * std::polar(1.0, dmu[i] * rule.nodes[m]);
			mass += rule.weights[m] * std::norm(y);
		}
		return mass;
	}

	double fit_loglog_slope(std::span<const double> x, std::span<const double> y)
	{
		if (x.size() != y.size() || x.size() < 2)
			throw PreconditionError("slope fit needs two or more (x, y) pairs");
		double sx = 0, sy = 0, sxx = 0, sxy = 0;
		const double n = static_cast<double>(x.size());
		for (std::size_t i = 0; i < x.size(); ++i)
		{
			const double lx = std::log(x[i]), ly = std::log(y[i]);
			sx += lx;
			sy += ly;
			sxx += lx * lx;
			sxy += lx * ly;
		}
		return (n * sxy - sx * sy) / (n * sxx - sx * sx);
	}
} // namespace transmute
