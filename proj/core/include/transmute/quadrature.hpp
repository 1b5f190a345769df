#pragma once

#include <span>
#include <vector>

namespace transmute
{
	/// Nodes and weights of a quadrature rule on a fixed interval.
	struct QuadratureRule
	{
		std::vector<double> nodes;
		std::vector<double> weights;

		std::size_t size() const { return nodes.size(); }
	};

	/// n-point Gauss-Legendre rule on [-1, 1] (Newton on the Legendre recurrence).
	QuadratureRule gauss_legendre(int n);

	/// Composite Gauss-Legendre: `panels` equal panels on [a, b], `order` nodes each.
	QuadratureRule composite_gauss_legendre(double a, double b, int panels, int order);

	/// Composite trapezoid rule for a periodic integrand on [a, b): `n` equispaced
	/// nodes a + m (b - a) / n, equal weights.
	QuadratureRule periodic_trapezoid(double a, double b, int n);
} // namespace transmute
