#include "transmute/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "transmute/error.hpp"
#include "transmute/scheme.hpp"

namespace transmute
{
	Spectrum::Spectrum(std::vector<double> frequencies, std::vector<ModeLabel> labels)
	    : frequencies_(std::move(frequencies)), labels_(std::move(labels))
	{
		if (frequencies_.empty())
			throw PreconditionError("spectrum must hold at least one mode");
		if (frequencies_.size() != labels_.size())
			throw PreconditionError("spectrum: frequencies and labels differ in length");
		for (std::size_t j = 1; j < frequencies_.size(); ++j)
			if (!(frequencies_[j] > frequencies_[j - 1]))
				throw PreconditionError("spectrum frequencies must be strictly increasing (index " +
				                        std::to_string(j) + ")");
	}

	double Spectrum::max_abs_frequency() const
	{
		return std::max(std::abs(frequencies_.front()), std::abs(frequencies_.back()));
	}

	State::State(SpectrumPtr spectrum) : spectrum_(std::move(spectrum))
	{
		if (!spectrum_)
			throw PreconditionError("state needs a spectrum");
		coeffs_.assign(spectrum_->size(), Complex{});
	}

	State::State(SpectrumPtr spectrum, std::vector<Complex> coeffs)
	    : spectrum_(std::move(spectrum)), coeffs_(std::move(coeffs))
	{
		if (!spectrum_)
			throw PreconditionError("state needs a spectrum");
		if (coeffs_.size() != spectrum_->size())
			throw PreconditionError("state length " + std::to_string(coeffs_.size()) +
			                        " does not match spectrum length " + std::to_string(spectrum_->size()));
	}

	double State::norm() const
	{
		double s = 0.0;
		for (const auto &c : coeffs_)
			s += std::norm(c);
		return std::sqrt(s);
	}

	namespace
	{
		void require_same_spectrum(const State &a, const State &b)
		{
			if (a.size() != b.size())
				throw PreconditionError("states live on different spectra");
		}
	} // namespace

	State &State::operator+=(const State &other)
	{
		require_same_spectrum(*this, other);
		for (std::size_t j = 0; j < coeffs_.size(); ++j)
			coeffs_[j] += other.coeffs_[j];
		return *this;
	}

	State &State::operator-=(const State &other)
	{
		require_same_spectrum(*this, other);
		for (std::size_t j = 0; j < coeffs_.size(); ++j)
			coeffs_[j] -= other.coeffs_[j];
		return *this;
	}

	State &State::operator*=(Complex scale)
	{
		for (auto &c : coeffs_)
			c *= scale;
		return *this;
	}

	FilterBand::FilterBand(double lo_, double hi_) : lo(lo_), hi(hi_)
	{
		if (!(lo >= 0.0 && lo < hi))
			throw PreconditionError("filter band needs 0 <= lo < hi (got lo=" + std::to_string(lo) +
			                        ", hi=" + std::to_string(hi) + ")");
	}

	bool FilterBand::contains(double mu) const
	{
		const double a = std::abs(mu);
		if (a > hi)
			return false;
		return lo == 0.0 || a > lo;
	}

	SpectrumPtr make_transport_spectrum(int n)
	{
		if (n < 1)
			throw PreconditionError("transport spectrum needs N >= 1");
		std::vector<double> mu;
		std::vector<ModeLabel> labels;
		for (int j = -n; j <= n; ++j)
		{
			mu.push_back(2.0 * std::numbers::pi * j);
			labels.push_back({j, 0});
		}
		return std::make_shared<const Spectrum>(std::move(mu), std::move(labels));
	}

	SpectrumPtr make_wave_spectrum(int n)
	{
		if (n < 1)
			throw PreconditionError("wave spectrum needs N >= 1");
		std::vector<double> mu;
		std::vector<ModeLabel> labels;
		for (int j = n; j >= 1; --j)
		{
			mu.push_back(-std::numbers::pi * j);
			labels.push_back({j, -1});
		}
		for (int j = 1; j <= n; ++j)
		{
			mu.push_back(std::numbers::pi * j);
			labels.push_back({j, +1});
		}
		return std::make_shared<const Spectrum>(std::move(mu), std::move(labels));
	}

	State filter(const State &state, const FilterBand &band)
	{
		State out = state;
		const auto &spec = state.spectrum();
		for (std::size_t j = 0; j < out.size(); ++j)
			if (!band.contains(spec.frequency(j)))
				out[j] = Complex{};
		return out;
	}

	std::vector<std::size_t> band_modes(const Spectrum &spectrum, const FilterBand &band)
	{
		std::vector<std::size_t> idx;
		for (std::size_t j = 0; j < spectrum.size(); ++j)
			if (band.contains(spectrum.frequency(j)))
				idx.push_back(j);
		return idx;
	}

	State evolve_continuous(const State &state, double t)
	{
		State out = state;
		const auto &spec = state.spectrum();
		for (std::size_t j = 0; j < out.size(); ++j)
			out[j] *= std::polar(1.0, spec.frequency(j) * t);
		return out;
	}

	State evolve_discrete(const State &state, long long k, const Scheme &scheme, double tau)
	{
		if (!(tau > 0.0))
			throw PreconditionError("time step must be positive");
		State out = state;
		const auto &spec = state.spectrum();
		for (std::size_t j = 0; j < out.size(); ++j)
		{
			if (out[j] == Complex{})
				continue;
			const double alpha = spec.frequency(j) * tau;
			if (!scheme.in_domain(alpha))
				throw FrequencyOutOfSchemeDomain("mode " + std::to_string(j) + " has |mu tau| = " +
				                                 std::to_string(std::abs(alpha)) + " >= R of scheme " +
				                                 scheme.name());
			out[j] *= std::polar(1.0, scheme.f(alpha) * static_cast<double>(k));
		}
		return out;
	}

	double norm_r(const State &state, double r)
	{
		const auto &spec = state.spectrum();
		double s = 0.0;
		for (std::size_t j = 0; j < state.size(); ++j)
		{
			const double mu = spec.frequency(j);
			s += std::norm(state[j]) * std::pow(1.0 + mu * mu, r);
		}
		return std::sqrt(s);
	}

	double max_active_frequency(const State &state)
	{
		double m = 0.0;
		for (std::size_t j = 0; j < state.size(); ++j)
			if (state[j] != Complex{})
				m = std::max(m, std::abs(state.spectrum().frequency(j)));
		return m;
	}

	double relative_error(const State &a, const State &b)
	{
		const double d = (a - b).norm();
		const double n = b.norm();
		return n > 0.0 ? d / n : d;
	}
} // namespace transmute
