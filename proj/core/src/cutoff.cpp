#include "transmute/cutoff.hpp"

#include <cmath>

#include "transmute/error.hpp"

namespace transmute
{
	double smooth_step(double x)
	{
		if (x <= 0.0)
			return 0.0;
		if (x >= 1.0)
			return 1.0;
		const double b0 = std::exp(-1.0 / x);
		const double b1 = std::exp(-1.0 / (1.0 - x));
		return b0 / (b0 + b1);
	}

	Cutoff::Cutoff(double inner_support, double inner_plateau, double plateau, double support)
	    : inner_support_(inner_support), inner_plateau_(inner_plateau), plateau_(plateau), support_(support)
	{
	}

	Cutoff Cutoff::symmetric(double plateau, double support)
	{
		if (!(plateau > 0.0 && plateau < support))
			throw PreconditionError("cutoff needs 0 < plateau < support");
		return Cutoff(0.0, 0.0, plateau, support);
	}

	Cutoff Cutoff::band(double inner_support, double inner_plateau, double plateau, double support)
	{
		if (!(inner_support > 0.0 && inner_support < inner_plateau && inner_plateau < plateau && plateau < support))
			throw PreconditionError("band cutoff needs 0 < inner support < inner plateau < plateau < support");
		return Cutoff(inner_support, inner_plateau, plateau, support);
	}

	double Cutoff::operator()(double alpha) const
	{
		const double a = std::abs(alpha);
		if (a >= support_)
			return 0.0;
		double v = a <= plateau_ ? 1.0 : smooth_step((support_ - a) / (support_ - plateau_));
		if (is_band())
		{
			if (a <= inner_support_)
				return 0.0;
			if (a < inner_plateau_)
				v *= smooth_step((a - inner_support_) / (inner_plateau_ - inner_support_));
		}
		return v;
	}
} // namespace transmute
