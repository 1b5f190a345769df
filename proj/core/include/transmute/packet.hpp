#pragma once

#include <span>

#include "transmute/spectrum.hpp"

namespace transmute
{
	/// Smooth bump exp(-1 / (1 - x^2)) on (-1, 1), scaled to unit L2 norm.
	double unit_bump(double x);

	/// Smallest transport truncation N holding the packet at (tau, delta).
	int packet_modes(double tau, double delta);

	/// Transport-spectrum state a_j = tau^{1/4} chi(sqrt(tau) 2 j pi - delta / sqrt(tau)) exp(-2 i j pi x0)
	/// with chi = unit_bump. Throws PreconditionError if the spectrum is too short.
	State sharpness_packet(SpectrumPtr spectrum, double tau, double delta, double x0);

	/// Physical-space mass int |y(x)|^2 dx of y(x) = sum_j a_j exp(2 i j pi x) over
	/// the part of the unit circle at distance >= eps from x0.
	double outside_mass(const State &packet, double tau, double delta, double x0, double eps);

	/// Least-squares slope of log y against log x.
	double fit_loglog_slope(std::span<const double> x, std::span<const double> y);
} // namespace transmute
