#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "transmute/scheme.hpp"
#include "transmute/spectrum.hpp"

namespace transmute
{
	/// Scalar observation B on the eigenbasis: values b_j = B Phi_j, with the
	/// boundedness order p and constant C_p of
	/// |b_j|^2 <= C_p^2 (mu_j^{2p} + 1).
	class ObservationOperator
	{
	public:
		/// Throws PreconditionError if the size does not match or the bound fails.
		ObservationOperator(const Spectrum &spectrum, std::vector<Complex> values, int order, double constant);

		/// Builds the operator with the smallest admissible C_p for order p.
		static ObservationOperator with_certified_constant(const Spectrum &spectrum, std::vector<Complex> values,
		                                                   int order);

		std::span<const Complex> values() const { return values_; }
		Complex value(std::size_t j) const { return values_[j]; }
		std::size_t size() const { return values_.size(); }
		int order() const { return order_; }
		double constant() const { return constant_; }

	private:
		std::vector<Complex> values_;
		int order_;
		double constant_;
	};

	/// y -> y(0) on the circle: b_j = 1 for every mode, p = 1.
	ObservationOperator point_obs_transport(const Spectrum &spectrum);

	/// y -> phi(t, x0) for the 1-D wave on (0, 1) with modes sqrt 2 sin(j pi x):
	/// b_j = sin(j pi x0) on both branches, p = 1. Requires 0 < x0 < 1 and a
	/// spectrum built by make_wave_spectrum.
	ObservationOperator point_obs_wave(const Spectrum &spectrum, double x0);

	struct HermitianExtremes
	{
		double lambda_min = 0.0;
		double lambda_max = 0.0;
	};

	/// Extremal eigenvalues of a Hermitian matrix (dense self-adjoint eigensolve).
	HermitianExtremes hermitian_extremes(const Eigen::MatrixXcd &matrix);

	struct GramianResult
	{
		/// G_jl over the band modes, in the order of `modes`.
		Eigen::MatrixXcd matrix;
		std::vector<std::size_t> modes;
		double lambda_min = 0.0;
		double lambda_max = 0.0;
		double T = 0.0;
		/// 0 for the continuous Gramian.
		double tau = 0.0;
		std::string scheme;
		double band_lo = 0.0;
		double band_hi = 0.0;

		std::size_t mode_count() const { return modes.size(); }
		/// Best observability constant 1 / lambda_min.
		double c_obs() const { return 1.0 / lambda_min; }
		/// Best admissibility constant lambda_max.
		double c_adm() const { return lambda_max; }
	};

	/// G_jl = conj(b_j) b_l int_0^T exp(i (mu_l - mu_j) t) dt, in closed form.
	/// Throws PreconditionError on an empty band.
	GramianResult continuous_gramian(const Spectrum &spectrum, const ObservationOperator &obs, const FilterBand &band,
	                                 double T);

	/// Number of grid times k tau in (0, T]: floor(T / tau) up to a relative 1e-12 guard.
	long long discrete_step_count(double tau, double T);

	/// G_jl = conj(b_j) b_l tau sum_k exp(i (f(mu_l tau) - f(mu_j tau)) k) for
	/// k = k_shift + 1 .. k_shift + discrete_step_count(tau, T), summed in closed
	/// form. Throws FrequencyOutOfSchemeDomain if a band mode has |mu| tau >= R.
	GramianResult discrete_gramian(const Spectrum &spectrum, const ObservationOperator &obs, const Scheme &scheme,
	                               double tau, double T, const FilterBand &band, long long k_shift = 0);

	/// A spectrum and observation parametrized by the step: for each tau the
	/// spectrum must hold every mode with |mu| <= delta / tau.
	struct SpectralFamily
	{
		std::string name;
		std::function<SpectrumPtr(double tau, double delta)> spectrum;
		std::function<ObservationOperator(const Spectrum &)> observation;
	};

	SpectralFamily transport_family();
	SpectralFamily wave_family(double x0);

	struct SweepRow
	{
		double tau = 0.0;
		double T = 0.0;
		double delta = 0.0;
		double lambda_min = 0.0;
		double lambda_max = 0.0;
		double c_obs = 0.0;
		std::size_t modes = 0;
	};

	/// Discrete Gramian on the band (0, delta / tau] for each tau of the ladder.
	std::vector<SweepRow> uniformity_sweep(const SpectralFamily &family, const Scheme &scheme, double delta, double T,
	                                       std::span<const double> taus);

	/// Largest relative spread (max - min) / min of a positive column.
	double relative_variation(std::span<const double> values);

	struct InghamBounds
	{
		double c_lower = 0.0;
		double c_upper = 0.0;
		std::size_t modes = 0;
	};

	/// Frame bounds of tau sum_{k tau in (0, T]} |sum_j a_j exp(i f(mu_j tau) k)|^2
	/// relative to sum |a_j|^2: the extremal eigenvalues of the discrete Gramian
	/// with b_j = 1. Frequencies must be increasing with consecutive gaps >= gap
	/// and |mu_j| tau <= delta; PreconditionError otherwise.
	InghamBounds ingham_bounds(std::span<const double> frequencies, double gap, const Scheme &scheme, double tau,
	                           double delta, double T);

	/// Frequencies 2 pi j with |2 pi j| tau <= delta.
	std::vector<double> lattice_frequencies(double tau, double delta);

	/// Wave data phi(0) = sum alpha_j sqrt2 sin(j pi x), phi'(0) = sum beta_j sqrt2 sin(j pi x)
	/// recovered from the branch coefficients c_j^+-:
	/// alpha_j = (c+ + c-) / sqrt2, beta_j = i j pi (c+ - c-) / sqrt2.
	struct WaveComponents
	{
		int j = 0;
		Complex alpha;
		Complex beta;
	};

	std::vector<WaveComponents> wave_components(const State &state);

	/// sqrt(sum_j (|alpha_j|^2 + |beta_j|^2 / (j pi)^2) sin^2(j pi x0)).
	double weak_star_norm(const State &state, double x0);

	struct LiouvilleResult
	{
		bool pass = false;
		/// 1 / C with C the best constant over j <= J (0 when some sin vanishes).
		double min_margin = 0.0;
		double constant = 0.0;
		/// First j where the sine vanishes, or where the constant is attained.
		int witness_j = 0;
		std::string detail;
	};

	/// Checks (1 + (j pi)^2)^{r/2} <= C sin^2(j pi x0) for j = 1..J with the best C.
	/// Passes when no sine vanishes and C over 1..J is within a factor 2 of C
	/// over 1..J/10 (C does not keep growing with J).
	LiouvilleResult liouville_check(double x0, double r, int J);

	struct WeakObsRow
	{
		double tau = 0.0;
		double lambda_min = 0.0;
		std::size_t modes = 0;
	};

	/// lambda_min of G v = lambda S v on the wave band |mu| tau <= delta, with G
	/// the discrete point-observation Gramian at x0 and S the diagonal weak-norm
	/// Gram matrix. Throws PreconditionError when S is singular on the band.
	std::vector<WeakObsRow> weak_obs_sweep(const Scheme &scheme, double x0, double delta, double T,
	                                       std::span<const double> taus);

	struct FormulationWeights
	{
		std::vector<double> alpha;
		/// Squared ratio of the two per-mode observation weights of the Newmark
		/// scheme: B1 on the step average versus B1 A0^{-1/2} A0tau^{1/2} on it,
		/// i.e. 1 + (beta - 1/4) alpha^2.
		std::vector<double> ratio_sq;
		double min_ratio_sq = 0.0;
		double max_ratio_sq = 0.0;
		/// Closed-form range on |alpha| <= delta: [1 + (beta - 1/4) delta^2, 1].
		double bound_lo = 0.0;
		double bound_hi = 1.0;
	};

	FormulationWeights newmark_formulation_weights(double beta, double delta, int samples = 257);
} // namespace transmute
