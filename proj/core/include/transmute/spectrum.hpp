#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace transmute
{
	class Scheme;

	using Complex = std::complex<double>;

	/// Tag attached to each eigenmode. Transport modes use branch 0; the two
	/// branches of a second-order (wave) operator use +1 / -1.
	struct ModeLabel
	{
		int index = 0;
		int branch = 0;

		friend bool operator==(const ModeLabel &, const ModeLabel &) = default;
	};

	/// Finite truncation of the purely imaginary spectrum (i mu_j) of a
	/// skew-adjoint operator with compact resolvent, on an orthonormal eigenbasis.
	class Spectrum
	{
	public:
		/// Throws PreconditionError unless frequencies are strictly increasing,
		/// non-empty, and match labels in length.
		Spectrum(std::vector<double> frequencies, std::vector<ModeLabel> labels);

		std::size_t size() const { return frequencies_.size(); }
		std::span<const double> frequencies() const { return frequencies_; }
		std::span<const ModeLabel> labels() const { return labels_; }
		double frequency(std::size_t j) const { return frequencies_[j]; }
		const ModeLabel &label(std::size_t j) const { return labels_[j]; }

		/// Largest |mu_j|.
		double max_abs_frequency() const;

	private:
		std::vector<double> frequencies_;
		std::vector<ModeLabel> labels_;
	};

	using SpectrumPtr = std::shared_ptr<const Spectrum>;

	/// Coefficients a_j of a vector on the eigenbasis of its spectrum.
	class State
	{
	public:
		/// Zero state on `spectrum`.
		explicit State(SpectrumPtr spectrum);
		State(SpectrumPtr spectrum, std::vector<Complex> coeffs);

		const Spectrum &spectrum() const { return *spectrum_; }
		const SpectrumPtr &spectrum_ptr() const { return spectrum_; }
		std::span<const Complex> coeffs() const { return coeffs_; }
		std::span<Complex> coeffs() { return coeffs_; }
		std::size_t size() const { return coeffs_.size(); }
		Complex operator[](std::size_t j) const { return coeffs_[j]; }
		Complex &operator[](std::size_t j) { return coeffs_[j]; }

		/// X-norm, sqrt(sum |a_j|^2).
		double norm() const;

		State &operator+=(const State &other);
		State &operator-=(const State &other);
		State &operator*=(Complex scale);

		friend State operator+(State lhs, const State &rhs) { return lhs += rhs; }
		friend State operator-(State lhs, const State &rhs) { return lhs -= rhs; }
		friend State operator*(Complex scale, State s) { return s *= scale; }

	private:
		SpectrumPtr spectrum_;
		std::vector<Complex> coeffs_;
	};

	/// Spectral band lo < |mu| <= hi. lo == 0 means no lower cut, so the band is
	/// the full filtered space |mu| <= hi (zero mode included).
	struct FilterBand
	{
		double lo = 0.0;
		double hi = 0.0;

		/// Throws PreconditionError unless 0 <= lo < hi.
		FilterBand(double lo, double hi);
		static FilterBand upto(double hi) { return FilterBand(0.0, hi); }

		bool contains(double mu) const;
	};

	/// Frequencies 2 pi j, j = -n..n (transport on the unit circle).
	SpectrumPtr make_transport_spectrum(int n);

	/// Frequencies +- j pi, j = 1..n (1-D Dirichlet wave, both branches).
	SpectrumPtr make_wave_spectrum(int n);

	State filter(const State &state, const FilterBand &band);

	/// Indices of the modes of `spectrum` inside `band`, in increasing frequency order.
	std::vector<std::size_t> band_modes(const Spectrum &spectrum, const FilterBand &band);

	State evolve_continuous(const State &state, double t);

	/// Applies T_tau^k: a_j -> a_j exp(i f(mu_j tau) k). Throws
	/// FrequencyOutOfSchemeDomain if a nonzero mode has |mu_j| tau >= R.
	State evolve_discrete(const State &state, long long k, const Scheme &scheme, double tau);

	/// sqrt(sum |a_j|^2 (1 + mu_j^2)^r).
	double norm_r(const State &state, double r);

	/// Largest |mu_j| over modes with a nonzero coefficient (0 for the zero state).
	double max_active_frequency(const State &state);

	/// Relative distance ||a - b|| / ||b|| (absolute when b == 0).
	double relative_error(const State &a, const State &b);
} // namespace transmute
