#include "transmute/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "transmute/error.hpp"

namespace transmute
{
	namespace
	{
		QuadratureRule compute_gauss_legendre(int n)
		{
			QuadratureRule r;
			r.nodes.resize(n);
			r.weights.resize(n);
			for (int i = 0; i < (n + 1) / 2; ++i)
			{
				double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
				double dp = 0.0;
				for (int it = 0; it < 100; ++it)
				{
					double p0 = 1.0, p1 = x;
					for (int k = 2; k <= n; ++k)
					{
						const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
						p0 = p1;
						p1 = p2;
					}
					dp = n * (x * p1 - p0) / (x * x - 1.0);
					const double dx = p1 / dp;
					x -= dx;
					if (std::abs(dx) < 1e-16)
						break;
				}
				const double w = 2.0 / ((1.0 - x * x) * dp * dp);
				r.nodes[i] = -x;
				r.nodes[n - 1 - i] = x;
				r.weights[i] = w;
				r.weights[n - 1 - i] = w;
			}
			return r;
		}
	} // namespace

	QuadratureRule gauss_legendre(int n)
	{
		if (n < 1)
			throw PreconditionError("Gauss-Legendre needs n >= 1");
		static std::mutex mtx;
		static std::map<int, QuadratureRule> cache;
		std::lock_guard lock(mtx);
		auto it = cache.find(n);
		if (it == cache.end())
			it = cache.emplace(n, compute_gauss_legendre(n)).first;
		return it->second;
	}

	QuadratureRule composite_gauss_legendre(double a, double b, int panels, int order)
	{
		if (panels < 1)
			throw PreconditionError("composite rule needs at least one panel");
		const QuadratureRule base = gauss_legendre(order);
		QuadratureRule r;
		r.nodes.reserve(static_cast<std::size_t>(panels) * order);
		r.weights.reserve(r.nodes.capacity());
		const double h = (b - a) / panels;
		for (int p = 0; p < panels; ++p)
		{
			const double c = a + (p + 0.5) * h;
			for (int i = 0; i < order; ++i)
			{
				r.nodes.push_back(c + 0.5 * h * base.nodes[i]);
				r.weights.push_back(0.5 * h * base.weights[i]);
			}
		}
		return r;
	}

	QuadratureRule periodic_trapezoid(double a, double b, int n)
	{
		if (n < 1)
			throw PreconditionError("trapezoid rule needs n >= 1");
		QuadratureRule r;
		r.nodes.resize(n);
		r.weights.assign(n, (b - a) / n);
		for (int m = 0; m < n; ++m)
			r.nodes[m] = a + (b - a) * m / n;
		return r;
	}
} // namespace transmute
