#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace transmute
{
	/// Finitely supported function on the grid tau Z: values[i] sits at
	/// (k_min + i) tau; zero elsewhere.
	struct GridFunction
	{
		double tau = 1.0;
		long long k_min = 0;
		std::vector<std::complex<double>> values;

		long long k_max() const { return k_min + static_cast<long long>(values.size()) - 1; }
		std::complex<double> at(long long k) const;
	};

	/// Default node count for Nyquist-cell integrals: max(256, 8 * support length).
	int default_quad_nodes(const GridFunction &u);

	/// F_tau[u](mu) = tau sum_k u(k tau) exp(-i mu k tau), for |mu| < pi / tau.
	/// Throws PreconditionError outside the Nyquist band.
	std::complex<double> dft(const GridFunction &u, double mu);

	/// (1 / 2 pi) int_{-pi/tau}^{pi/tau} v(mu) exp(i mu k tau) dmu by the periodic
	/// trapezoid rule with `quad_nodes` nodes offset half a step from the cell edges.
	std::complex<double> idft(const std::function<std::complex<double>(double)> &v, double tau, long long k,
	                          int quad_nodes);

	struct ParsevalSides
	{
		double lhs = 0.0; ///< (1 / 2 pi) int |F_tau[u]|^2
		double rhs = 0.0; ///< tau sum |u|^2
	};

	ParsevalSides parseval_check(const GridFunction &u, int quad_nodes);
} // namespace transmute
