#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace transmute
{
	using RealFunction = std::function<double(double)>;

	/// Dispersion function f of a conservative time discretization: the mode
	/// exp(i mu t) is advanced per step by exp(i f(mu tau)). f is defined on
	/// (-R, R) in the dimensionless variable alpha = mu tau.
	class Scheme
	{
	public:
		/// Closed-form triple (f, f', f'').
		Scheme(std::string name, double radius, RealFunction f, RealFunction f_prime, RealFunction f_second);

		/// f only; derivatives by central differences (h = 1e-6 for f', 1e-4 for f'').
		static Scheme from_function(std::string name, double radius, RealFunction f);

		const std::string &name() const { return name_; }
		/// Domain radius R; +infinity when unbounded.
		double radius() const { return radius_; }
		bool bounded() const { return radius_ != std::numeric_limits<double>::infinity(); }

		/// Throws PreconditionError when |alpha| >= R.
		double f(double alpha) const;
		double f_prime(double alpha) const;
		double f_second(double alpha) const;

		bool in_domain(double alpha) const { return std::abs(alpha) < radius_; }

	private:
		void check_domain(double alpha) const;

		std::string name_;
		double radius_;
		RealFunction f_;
		RealFunction f_prime_;
		RealFunction f_second_;
	};

	/// f(alpha) = 2 arctan(alpha / 2), R = infinity.
	Scheme midpoint();

	/// Fourth-order Gauss: f(alpha) = 2 arctan(6 alpha / (12 - alpha^2)), R = 2 sqrt 3.
	Scheme gauss4();

	/// Newmark with parameter beta in [0, 1/4]:
	/// f(alpha) = 2 arctan((alpha / 2) / sqrt(1 + (beta - 1/4) alpha^2)).
	/// R = infinity at beta = 1/4, 2 / sqrt(1 - 4 beta) otherwise (where the root vanishes).
	Scheme newmark(double beta);

	/// Exact phase f(alpha) = alpha restricted to (-pi, pi). Used as a reference
	/// scheme: its discrete solutions sample the continuous ones exactly.
	Scheme exact_phase();

	/// Parses "midpoint", "gauss4", "newmark:<beta>" or "exact".
	Scheme parse_scheme(std::string_view name);

	/// Returns alpha in [-delta, delta] with f(alpha) = y. Safeguarded Newton
	/// (bisection fallback). Throws TargetOutOfRange if y is outside
	/// [f(-delta), f(delta)], PreconditionError if delta >= R.
	double inverse_g(const Scheme &scheme, double y, double delta);

	struct FPrimeExtremes
	{
		double inf = 0.0;
		double sup = 0.0;
	};

	/// Extremal values of f' on [-delta, delta]: dense sampling then golden-section
	/// refinement around the best samples.
	FPrimeExtremes band_inf_sup_fprime(const Scheme &scheme, double delta, int samples = 4096);

	/// T0 / inf_{|alpha| <= delta} f'(alpha).
	double uniform_time_threshold(const Scheme &scheme, double delta, double t0);

	struct HypothesisCheck
	{
		std::string name;
		bool pass = true;
		double worst_alpha = 0.0;
		double worst_value = 0.0;
		std::string detail;
	};

	struct HypothesisReport
	{
		std::string scheme;
		double delta = 0.0;
		int samples = 0;
		std::vector<HypothesisCheck> checks;

		bool all_pass() const;
		const HypothesisCheck &check(std::string_view name) const;
	};

	/// Runs the consistency, oddness, range and monotonicity checks on a uniform
	/// grid of [-delta, delta] plus seeded random points. Failures are recorded
	/// with their witness; nothing is thrown for a failing scheme.
	/// A range failure is located by bisection at the first |alpha| where |f| reaches pi.
	HypothesisReport certify(const Scheme &scheme, double delta, int samples, std::uint64_t seed = 0x5eed);
} // namespace transmute
