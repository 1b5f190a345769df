#pragma once

namespace transmute
{
	/// Smooth transition psi(x) = B(x) / (B(x) + B(1 - x)), B(x) = exp(-1/x) for
	/// x > 0 and 0 otherwise. psi = 0 for x <= 0, 1 for x >= 1.
	double smooth_step(double x);

	/// Smooth even cutoff built from smooth_step. In the symmetric form it equals
	/// 1 on [-a, a] and vanishes outside (-b, b). In the band form it equals 1 for
	/// a_lo <= |alpha| <= a and vanishes for |alpha| <= b_lo or |alpha| >= b.
	class Cutoff
	{
	public:
		/// Throws PreconditionError unless 0 < plateau < support.
		static Cutoff symmetric(double plateau, double support);

		/// Throws PreconditionError unless 0 < inner_support < inner_plateau < plateau < support.
		static Cutoff band(double inner_support, double inner_plateau, double plateau, double support);

		double operator()(double alpha) const;

		double plateau() const { return plateau_; }
		double support() const { return support_; }
		double inner_plateau() const { return inner_plateau_; }
		double inner_support() const { return inner_support_; }
		bool is_band() const { return inner_plateau_ > 0.0; }
		/// sup |chi|; 1 for every cutoff built here.
		double sup_norm() const { return 1.0; }

	private:
		Cutoff(double inner_support, double inner_plateau, double plateau, double support);

		double inner_support_;
		double inner_plateau_;
		double plateau_;
		double support_;
	};
} // namespace transmute
