#include "transmute/observability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "transmute/error.hpp"
#include "transmute/parallel.hpp"

namespace transmute
{
	namespace
	{
		constexpr double pi = std::numbers::pi;
		constexpr Complex I{0.0, 1.0};

		double bound_factor(double mu, int order)
		{
			return std::pow(mu * mu, order) + 1.0;
		}

		// int_0^T exp(i d t) dt
		Complex window_integral(double d, double T)
		{
			const double x = d * T;
			if (std::abs(x) < 1e-6)
				return T * Complex(1.0 - x * x / 6.0, 0.5 * x);
			return (std::polar(1.0, x) - 1.0) / (I * d);
		}

		// sum_{k = k0 + 1}^{k0 + n} exp(i phi k)
		Complex window_sum(double phi, long long k0, long long n)
		{
			const double half = std::sin(0.5 * phi);
			const double dn = static_cast<double>(n);
			if (std::abs(half) < 1e-14)
				return std::polar(dn, phi * (static_cast<double>(k0) + 0.5 * (dn + 1.0)));
			const Complex centre = std::polar(1.0, phi * (static_cast<double>(k0) + 0.5 * (dn + 1.0)));
			return centre * (std::sin(0.5 * dn * phi) / half);
		}

		Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd &g)
		{
			return 0.5 * (g + g.adjoint());
		}

		Eigen::MatrixXcd discrete_matrix(std::span<const double> phases, std::span<const Complex> b, double tau,
		                                 long long n, long long k_shift)
		{
			const auto m = static_cast<Eigen::Index>(phases.size());
			Eigen::MatrixXcd g(m, m);
			parallel_for(phases.size(), [&](std::size_t r) {
				const auto i = static_cast<Eigen::Index>(r);
				for (Eigen::Index c = 0; c < m; ++c)
					g(i, c) = std::conj(b[r]) * b[c] * tau * window_sum(phases[c] - phases[r], k_shift, n);
			});
			return g;
		}
	} // namespace

	ObservationOperator::ObservationOperator(const Spectrum &spectrum, std::vector<Complex> values, int order,
	                                         double constant)
	    : values_(std::move(values)), order_(order), constant_(constant)
	{
		if (values_.size() != spectrum.size())
			throw PreconditionError("observation has " + std::to_string(values_.size()) + " values for " +
			                        std::to_string(spectrum.size()) + " modes");
		if (order_ < 0 || !(constant_ > 0.0))
			throw PreconditionError("observation needs order p >= 0 and C_p > 0");
		for (std::size_t j = 0; j < values_.size(); ++j)
		{
			const double lhs = std::norm(values_[j]);
			const double rhs = constant_ * constant_ * bound_factor(spectrum.frequency(j), order_);
			if (lhs > rhs * (1.0 + 1e-12))
				throw PreconditionError("observation is not bounded of order " + std::to_string(order_) +
				                        " with C_p = " + std::to_string(constant_) + " at mode " +
				                        std::to_string(j));
		}
	}

	ObservationOperator ObservationOperator::with_certified_constant(const Spectrum &spectrum,
	                                                                 std::vector<Complex> values, int order)
	{
		if (values.size() != spectrum.size())
			throw PreconditionError("observation length does not match the spectrum");
		double c = 0.0;
		for (std::size_t j = 0; j < values.size(); ++j)
			c = std::max(c, std::abs(values[j]) / std::sqrt(bound_factor(spectrum.frequency(j), order)));
		return ObservationOperator(spectrum, std::move(values), order, c > 0.0 ? c : 1.0);
	}

	ObservationOperator point_obs_transport(const Spectrum &spectrum)
	{
		return ObservationOperator::with_certified_constant(spectrum, std::vector<Complex>(spectrum.size(), 1.0), 1);
	}

	ObservationOperator point_obs_wave(const Spectrum &spectrum, double x0)
	{
		if (!(x0 > 0.0 && x0 < 1.0))
			throw PreconditionError("observation point x0 must lie in (0, 1)");
		std::vector<Complex> b(spectrum.size());
		for (std::size_t j = 0; j < b.size(); ++j)
		{
			const auto &l = spectrum.label(j);
			if (l.branch != 1 && l.branch != -1)
				throw PreconditionError("wave observation needs a two-branch wave spectrum");
			b[j] = std::sin(l.index * pi * x0);
		}
		return ObservationOperator::with_certified_constant(spectrum, std::move(b), 1);
	}

	HermitianExtremes hermitian_extremes(const Eigen::MatrixXcd &matrix)
	{
		if (matrix.rows() == 0)
			throw PreconditionError("eigenvalues of an empty matrix");
		Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(matrix), Eigen::EigenvaluesOnly);
		if (es.info() != Eigen::Success)
			throw Error("Hermitian eigensolve did not converge");
		return {es.eigenvalues()(0), es.eigenvalues()(es.eigenvalues().size() - 1)};
	}

	GramianResult continuous_gramian(const Spectrum &spectrum, const ObservationOperator &obs, const FilterBand &band,
	                                 double T)
	{
		if (!(T > 0.0))
			throw PreconditionError("observation time T must be positive");
		GramianResult r;
		r.modes = band_modes(spectrum, band);
		if (r.modes.empty())
			throw PreconditionError("filter band holds no mode of the spectrum");
		const auto m = static_cast<Eigen::Index>(r.modes.size());
		r.matrix.resize(m, m);
		for (Eigen::Index i = 0; i < m; ++i)
			for (Eigen::Index c = 0; c < m; ++c)
			{
				const auto ji = r.modes[i], jc = r.modes[c];
				r.matrix(i, c) = std::conj(obs.value(ji)) * obs.value(jc) *
				                 window_integral(spectrum.frequency(jc) - spectrum.frequency(ji), T);
			}
		const auto ext = hermitian_extremes(r.matrix);
		r.lambda_min = ext.lambda_min;
		r.lambda_max = ext.lambda_max;
		r.T = T;
		r.scheme = "continuous";
		r.band_lo = band.lo;
		r.band_hi = band.hi;
		return r;
	}

	long long discrete_step_count(double tau, double T)
	{
		if (!(tau > 0.0) || !(T > 0.0))
			throw PreconditionError("step count needs tau > 0 and T > 0");
		return static_cast<long long>(std::floor(T / tau * (1.0 + 1e-12)));
	}

	GramianResult discrete_gramian(const Spectrum &spectrum, const ObservationOperator &obs, const Scheme &scheme,
	                               double tau, double T, const FilterBand &band, long long k_shift)
	{
		GramianResult r;
		r.modes = band_modes(spectrum, band);
		if (r.modes.empty())
			throw PreconditionError("filter band holds no mode of the spectrum");
		std::vector<double> phases;
		std::vector<Complex> b;
		for (auto j : r.modes)
		{
			const double alpha = spectrum.frequency(j) * tau;
			if (!scheme.in_domain(alpha))
				throw FrequencyOutOfSchemeDomain("band mode with |mu| tau = " + std::to_string(std::abs(alpha)) +
				                                 " exceeds R of scheme " + scheme.name());
			phases.push_back(scheme.f(alpha));
			b.push_back(obs.value(j));
		}
		r.matrix = discrete_matrix(phases, b, tau, discrete_step_count(tau, T), k_shift);
		const auto ext = hermitian_extremes(r.matrix);
		r.lambda_min = ext.lambda_min;
		r.lambda_max = ext.lambda_max;
		r.T = T;
		r.tau = tau;
		r.scheme = scheme.name();
		r.band_lo = band.lo;
		r.band_hi = band.hi;
		return r;
	}

	SpectralFamily transport_family()
	{
		return {"transport",
		        [](double tau, double delta) {
			        return make_transport_spectrum(static_cast<int>(std::floor(delta / (2.0 * pi * tau))) + 1);
		        },
		        [](const Spectrum &s) { return point_obs_transport(s); }};
	}

	SpectralFamily wave_family(double x0)
	{
		if (!(x0 > 0.0 && x0 < 1.0))
			throw PreconditionError("observation point x0 must lie in (0, 1)");
		return {"wave",
		        [](double tau, double delta) {
			        return make_wave_spectrum(static_cast<int>(std::floor(delta / (pi * tau))) + 1);
		        },
		        [x0](const Spectrum &s) { return point_obs_wave(s, x0); }};
	}

	std::vector<SweepRow> uniformity_sweep(const SpectralFamily &family, const Scheme &scheme, double delta, double T,
	                                       std::span<const double> taus)
	{
		std::vector<SweepRow> rows(taus.size());
		for (std::size_t i = 0; i < taus.size(); ++i)
		{
			const double tau = taus[i];
			const auto spec = family.spectrum(tau, delta);
			const auto obs = family.observation(*spec);
			const auto g = discrete_gramian(*spec, obs, scheme, tau, T, FilterBand::upto(delta / tau));
			rows[i] = {tau, T, delta, g.lambda_min, g.lambda_max, g.c_obs(), g.mode_count()};
		}
		return rows;
	}

	double relative_variation(std::span<const double> values)
	{
		if (values.empty())
			return 0.0;
		const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
		return (*hi - *lo) / *lo;
	}

	InghamBounds ingham_bounds(std::span<const double> frequencies, double gap, const Scheme &scheme, double tau,
	                           double delta, double T)
	{
		if (frequencies.empty())
			throw PreconditionError("Ingham bounds need at least one frequency");
		if (!(gap > 0.0))
			throw PreconditionError("gap must be positive");
		for (std::size_t j = 1; j < frequencies.size(); ++j)
			if (frequencies[j] - frequencies[j - 1] < gap * (1.0 - 1e-12))
				throw PreconditionError("frequencies violate the gap condition at index " + std::to_string(j));
		std::vector<double> phases;
		for (double mu : frequencies)
		{
			if (std::abs(mu) * tau > delta * (1.0 + 1e-12))
				throw PreconditionError("frequency " + std::to_string(mu) + " outside the filtered band delta / tau");
			phases.push_back(scheme.f(mu * tau));
		}
		const std::vector<Complex> ones(frequencies.size(), 1.0);
		const auto g = discrete_matrix(phases, ones, tau, discrete_step_count(tau, T), 0);
		const auto ext = hermitian_extremes(g);
		return {ext.lambda_min, ext.lambda_max, frequencies.size()};
	}

	std::vector<double> lattice_frequencies(double tau, double delta)
	{
		const int n = static_cast<int>(std::floor(delta / (2.0 * pi * tau) * (1.0 + 1e-12)));
		std::vector<double> mu;
		for (int j = -n; j <= n; ++j)
			mu.push_back(2.0 * pi * j);
		return mu;
	}

	std::vector<WaveComponents> wave_components(const State &state)
	{
		std::map<int, std::pair<Complex, Complex>> branches;
		const auto &spec = state.spectrum();
		for (std::size_t j = 0; j < state.size(); ++j)
		{
			const auto &l = spec.label(j);
			if (l.branch == 1)
				branches[l.index].first = state[j];
			else if (l.branch == -1)
				branches[l.index].second = state[j];
			else
				throw PreconditionError("wave components need a two-branch wave spectrum");
		}
		std::vector<WaveComponents> out;
		const double r2 = std::sqrt(2.0);
		for (const auto &[j, c] : branches)
			out.push_back({j, (c.first + c.second) / r2, I * (j * pi) * (c.first - c.second) / r2});
		return out;
	}

	double weak_star_norm(const State &state, double x0)
	{
		double s = 0.0;
		for (const auto &w : wave_components(state))
		{
			const double sn = std::sin(w.j * pi * x0);
			const double jp = w.j * pi;
			s += (std::norm(w.alpha) + std::norm(w.beta) / (jp * jp)) * sn * sn;
		}
		return std::sqrt(s);
	}

	LiouvilleResult liouville_check(double x0, double r, int J)
	{
		if (J < 1)
			throw PreconditionError("liouville_check needs J >= 1");
		LiouvilleResult res;
		const int j_early = std::max(1, J / 10);
		double c_early = 0.0;
		for (int j = 1; j <= J; ++j)
		{
			const double sn = std::sin(j * pi * x0);
			const double s2 = sn * sn;
			if (s2 < 1e-24)
			{
				res.pass = false;
				res.witness_j = j;
				res.constant = std::numeric_limits<double>::infinity();
				res.min_margin = 0.0;
				res.detail = "sin(j pi x0) vanishes at j = " + std::to_string(j);
				return res;
			}
			const double ratio = std::pow(1.0 + (j * pi) * (j * pi), 0.5 * r) / s2;
			if (ratio > res.constant)
			{
				res.constant = ratio;
				res.witness_j = j;
			}
			if (j == j_early)
				c_early = res.constant;
		}
		res.min_margin = 1.0 / res.constant;
		res.pass = res.constant <= 2.0 * c_early;
		res.detail = "C(" + std::to_string(J) + ") = " + std::to_string(res.constant) + ", C(" +
		             std::to_string(j_early) + ") = " + std::to_string(c_early);
		return res;
	}

	std::vector<WeakObsRow> weak_obs_sweep(const Scheme &scheme, double x0, double delta, double T,
	                                       std::span<const double> taus)
	{
		const auto family = wave_family(x0);
		std::vector<WeakObsRow> rows;
		for (double tau : taus)
		{
			const auto spec = family.spectrum(tau, delta);
			const auto obs = family.observation(*spec);
			const auto g = discrete_gramian(*spec, obs, scheme, tau, T, FilterBand::upto(delta / tau));
			Eigen::VectorXd inv_sqrt(static_cast<Eigen::Index>(g.modes.size()));
			for (std::size_t i = 0; i < g.modes.size(); ++i)
			{
				const double sn = std::sin(spec->label(g.modes[i]).index * pi * x0);
				if (sn * sn < 1e-24)
					throw PreconditionError("weak norm is degenerate: sin(j pi x0) = 0 at j = " +
					                        std::to_string(spec->label(g.modes[i]).index));
				inv_sqrt(static_cast<Eigen::Index>(i)) = 1.0 / std::abs(sn);
			}
			const Eigen::MatrixXcd scaled = inv_sqrt.asDiagonal() * g.matrix * inv_sqrt.asDiagonal();
			rows.push_back({tau, hermitian_extremes(scaled).lambda_min, g.mode_count()});
		}
		return rows;
	}

	FormulationWeights newmark_formulation_weights(double beta, double delta, int samples)
	{
		if (!(beta >= 0.0 && beta <= 0.25))
			throw PreconditionError("newmark beta must lie in [0, 1/4]");
		const double c = beta - 0.25;
		if (!(delta > 0.0) || !(1.0 + c * delta * delta > 0.0))
			throw PreconditionError("delta must lie inside the Newmark domain");
		samples = std::max(samples, 2);
		FormulationWeights w;
		w.bound_lo = 1.0 + c * delta * delta;
		w.bound_hi = 1.0;
		w.min_ratio_sq = std::numeric_limits<double>::infinity();
		w.max_ratio_sq = -std::numeric_limits<double>::infinity();
		for (int i = 0; i < samples; ++i)
		{
			const double a = -delta + 2.0 * delta * i / (samples - 1);
			// A0tau / A0 = 1 / (1 + c alpha^2) per mode.
			const double w2_sq = 1.0 / (1.0 + c * a * a);
			const double ratio_sq = 1.0 / w2_sq;
			w.alpha.push_back(a);
			w.ratio_sq.push_back(ratio_sq);
			w.min_ratio_sq = std::min(w.min_ratio_sq, ratio_sq);
			w.max_ratio_sq = std::max(w.max_ratio_sq, ratio_sq);
		}
		return w;
	}
} // namespace transmute
