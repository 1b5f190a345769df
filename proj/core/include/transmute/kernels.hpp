#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "transmute/cutoff.hpp"
#include "transmute/discrete_fourier.hpp"
#include "transmute/scheme.hpp"
#include "transmute/spectrum.hpp"

namespace transmute
{
	/// Everything needed to evaluate the forward kernel rho_tau and the reverse
	/// kernel q_tau for one scheme at one time step.
	struct KernelConfig
	{
		Scheme scheme;
		double tau = 0.0;
		/// Filter radius (upper band edge for the band variant), alpha = mu tau units.
		double delta = 0.0;
		/// Lower band edge; 0 for the full filtered class.
		double delta_lo = 0.0;
		double eps = 0.0;
		/// Cutoff in the discrete variable alpha_tau = f(alpha): 1 on [-f(delta), f(delta)],
		/// supported in (-f(delta + eps), f(delta + eps)).
		Cutoff forward_cutoff;
		/// Cutoff in alpha: 1 on the band, supported eps beyond it.
		Cutoff reverse_cutoff;
		/// inf / sup of f' over the cutoff support, |alpha| <= delta + eps.
		FPrimeExtremes cone;

		int nodes_per_panel = 16;
		int min_panels = 64;
		/// Truncation margin of the forward k-sum and reverse t-integral, in time units.
		double window_margin = 0.0;
		/// Gauss-Legendre t-panels per oscillation in the reverse integral.
		double t_panels_per_oscillation = 1.0;

		/// sup of g' = 1 / inf f' over the forward cutoff support.
		double sup_gprime() const { return 1.0 / cone.inf; }
	};

	/// Validates delta + eps < R and builds both cutoffs. The truncation margin
	/// defaults to 5 eps.
	KernelConfig make_kernel_config(const Scheme &scheme, double tau, double delta, double eps);

	/// Band variant for data in span{Phi_j : delta_lo < |mu_j| tau <= delta_hi}:
	/// the reverse cutoff equals 1 on delta_lo <= |alpha| <= delta_hi.
	/// Requires eps < delta_lo.
	KernelConfig make_band_kernel_config(const Scheme &scheme, double tau, double delta_lo, double delta_hi,
	                                     double eps);

	/// rho_tau(t, s) = (1 / 2 pi tau) int exp(i (alpha s - g(alpha) t) / tau) chi(alpha) dalpha.
	Complex rho(const KernelConfig &cfg, double t, double s);

	/// rho_tau(t, s) for many s sharing one node set (sized for the largest |s|).
	std::vector<Complex> rho_row(const KernelConfig &cfg, double t, std::span<const double> s_values);

	/// Kernel without cutoff (chi = 1 on the whole Nyquist cell). Requires f to map
	/// (-R, R) onto (-pi, pi).
	Complex rho_without_cutoff(const Scheme &scheme, double tau, double t, double s, int panels = 256);

	/// q_tau(t, s) = (1 / 2 pi tau) int exp(i (f(alpha) s - alpha t) / tau) chi(alpha) dalpha.
	Complex q(const KernelConfig &cfg, double t, double s);

	/// q_tau(t, s) for many t at a fixed s.
	std::vector<Complex> q_column(const KernelConfig &cfg, std::span<const double> t_values, double s);

	/// Samples rho_tau(t, k tau) on the truncation window of the forward sum.
	GridFunction sample_rho(const KernelConfig &cfg, double t);

	/// Forward k-window [k_lo, k_hi] around the cone s in [t / sup f', t / inf f'].
	std::pair<long long, long long> forward_window(const KernelConfig &cfg, double t);

	/// Reverse t-window around the cone t in [s inf f', s sup f'].
	std::pair<double, double> reverse_window(const KernelConfig &cfg, double s);

	struct ForwardResult
	{
		State state;
		long long k_lo = 0;
		long long k_hi = 0;
		/// Estimated contribution of the truncated terms, relative to ||y0||.
		double tail_estimate = 0.0;
	};

	/// y(t) = tau sum_k rho_tau(t, k tau) y_tau^k, truncated to the cone window.
	/// Throws UnfilteredInput unless every nonzero mode is in the configured band.
	ForwardResult transmute_forward_detailed(const KernelConfig &cfg, const State &y0, double t);
	State transmute_forward(const KernelConfig &cfg, const State &y0, double t);

	struct ReverseResult
	{
		State state;
		double t_lo = 0.0;
		double t_hi = 0.0;
		std::size_t t_nodes = 0;
		double tail_estimate = 0.0;
	};

	/// y_tau^k = int q_tau(t, k tau) y(t) dt with y(t) the continuous trajectory.
	ReverseResult transmute_reverse_detailed(const KernelConfig &cfg, const State &y0, long long k);
	State transmute_reverse(const KernelConfig &cfg, const State &y0, long long k);

	/// Cone tests with the config's eps and f' extremes.
	bool rho_off_cone(const KernelConfig &cfg, double t, double s);
	bool q_off_cone(const KernelConfig &cfg, double t, double s);

	enum class KernelKind
	{
		Rho,
		Q
	};

	struct DecayProfile
	{
		std::vector<double> taus;
		std::vector<double> magnitudes;
		std::vector<double> floors;
		std::size_t points_used = 0;
		/// Least-squares slope of log |kernel| against log tau, over points above the floor.
		double slope = 0.0;
	};

	/// Kernel magnitude at a fixed off-cone point for each tau, with the fitted
	/// log-log slope. Throws PointInsideCone when (t, s) is on the cone.
	DecayProfile decay_profile(const Scheme &scheme, double delta, double eps, std::span<const double> taus, double t,
	                           double s, KernelKind kind);

	struct OperatorNormCheck
	{
		int trials = 0;
		/// Best Monte-Carlo ratio ||I w|| / ||w|| and its closed-form bound.
		double forward_measured = 0.0;
		double forward_bound = 0.0;
		/// Largest singular value of the discretized operator (a sharper lower estimate).
		double forward_top_singular = 0.0;
		double reverse_measured = 0.0;
		double reverse_bound = 0.0;
		double reverse_top_singular = 0.0;
	};

	/// Monte-Carlo lower estimates of ||I_tau|| : l2(tau Z) -> L2(R) and
	/// ||J_tau|| : L2(R) -> l2(tau Z) on inputs supported on `support_points` grid
	/// points (resp. cells of width tau), against ||chi|| sqrt(sup f') and
	/// ||chi|| / sqrt(inf f').
	OperatorNormCheck operator_norm_check(const KernelConfig &cfg, int trials, std::uint64_t seed,
	                                      int support_points = 16);
} // namespace transmute
