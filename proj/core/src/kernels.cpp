#include "transmute/kernels.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "transmute/error.hpp"
#include "transmute/packet.hpp"
#include "transmute/parallel.hpp"
#include "transmute/quadrature.hpp"

namespace transmute
{
	namespace
	{
		constexpr double pi = std::numbers::pi;
		constexpr Complex I{0.0, 1.0};

		// alpha-nodes of the forward integral with the s-independent factor
		// w chi(alpha) / (2 pi tau) and g(alpha) cached.
		struct ForwardNodes
		{
			std::vector<double> alpha;
			std::vector<double> weight;
			std::vector<double> g;
			double abs_sum = 0.0;
		};

		int panel_count(const KernelConfig &cfg, double phase_extent)
		{
			const double p = std::ceil(4.0 * phase_extent / (pi * cfg.tau));
			return std::max(cfg.min_panels, static_cast<int>(std::min(p, 1e7)));
		}

		ForwardNodes forward_nodes(const KernelConfig &cfg, int panels)
		{
			const double b = cfg.forward_cutoff.support();
			const auto rule = composite_gauss_legendre(-b, b, panels, cfg.nodes_per_panel);
			ForwardNodes n;
			const double g_delta = cfg.delta + cfg.eps;
			for (std::size_t i = 0; i < rule.size(); ++i)
			{
				const double chi = cfg.forward_cutoff(rule.nodes[i]);
				if (chi == 0.0)
					continue;
				n.alpha.push_back(rule.nodes[i]);
				n.weight.push_back(rule.weights[i] * chi / (2.0 * pi * cfg.tau));
				n.g.push_back(inverse_g(cfg.scheme, rule.nodes[i], g_delta));
				n.abs_sum += std::abs(n.weight.back());
			}
			return n;
		}

		int forward_panels(const KernelConfig &cfg, double t, double s_abs_max)
		{
			return panel_count(cfg, s_abs_max + std::abs(t) * cfg.sup_gprime());
		}

		// c_n = w_n chi_n exp(-i g_n t / tau)
		std::vector<Complex> forward_coefficients(const KernelConfig &cfg, const ForwardNodes &n, double t)
		{
			std::vector<Complex> c(n.alpha.size());
			for (std::size_t i = 0; i < c.size(); ++i)
				c[i] = n.weight[i] * std::polar(1.0, -n.g[i] * t / cfg.tau);
			return c;
		}

		Complex sum_with_phase(const std::vector<Complex> &c, const std::vector<double> &alpha, double scale)
		{
			Complex s{};
			for (std::size_t i = 0; i < c.size(); ++i)
				s += c[i] * std::polar(1.0, alpha[i] * scale);
			return s;
		}

		struct ReverseNodes
		{
			std::vector<double> alpha;
			std::vector<double> weight;
			std::vector<double> f;
			double abs_sum = 0.0;
		};

		ReverseNodes reverse_nodes(const KernelConfig &cfg, int panels)
		{
			const double b = cfg.reverse_cutoff.support();
			const auto rule = composite_gauss_legendre(-b, b, panels, cfg.nodes_per_panel);
			ReverseNodes n;
			for (std::size_t i = 0; i < rule.size(); ++i)
			{
				const double chi = cfg.reverse_cutoff(rule.nodes[i]);
				if (chi == 0.0)
					continue;
				n.alpha.push_back(rule.nodes[i]);
				n.weight.push_back(rule.weights[i] * chi / (2.0 * pi * cfg.tau));
				n.f.push_back(cfg.scheme.f(rule.nodes[i]));
				n.abs_sum += std::abs(n.weight.back());
			}
			return n;
		}

		int reverse_panels(const KernelConfig &cfg, double s_abs_max, double t_abs_max)
		{
			return panel_count(cfg, s_abs_max * cfg.cone.sup + t_abs_max);
		}

		// c_n = w_n chi_n exp(i f_n s / tau)
		std::vector<Complex> reverse_coefficients(const KernelConfig &cfg, const ReverseNodes &n, double s)
		{
			std::vector<Complex> c(n.alpha.size());
			for (std::size_t i = 0; i < c.size(); ++i)
				c[i] = n.weight[i] * std::polar(1.0, n.f[i] * s / cfg.tau);
			return c;
		}

		void validate_basic(const Scheme &scheme, double tau, double delta, double eps)
		{
			if (!(tau > 0.0))
				throw PreconditionError("time step tau must be positive");
			if (!(delta > 0.0) || !(eps > 0.0))
				throw PreconditionError("delta and eps must be positive");
			if (!scheme.in_domain(delta + eps))
				throw PreconditionError("delta + eps = " + std::to_string(delta + eps) + " must stay below R = " +
				                        std::to_string(scheme.radius()) + " of scheme " + scheme.name() +
				                        " (f must map the cutoff support into (-pi, pi))");
		}

		KernelConfig base_config(const Scheme &scheme, double tau, double delta, double eps)
		{
			validate_basic(scheme, tau, delta, eps);
			const double a = scheme.f(delta);
			const double b = scheme.f(delta + eps);
			if (!(b < pi))
				throw PreconditionError("f(delta + eps) must stay below pi");
			KernelConfig cfg{scheme, tau, delta, 0.0, eps, Cutoff::symmetric(a, b),
			                 Cutoff::symmetric(delta, delta + eps), band_inf_sup_fprime(scheme, delta + eps)};
			cfg.window_margin = 5.0 * eps;
			return cfg;
		}

		void check_filtered(const KernelConfig &cfg, const State &y0, bool band)
		{
			const auto &spec = y0.spectrum();
			for (std::size_t j = 0; j < y0.size(); ++j)
			{
				if (y0[j] == Complex{})
					continue;
				const double a = std::abs(spec.frequency(j)) * cfg.tau;
				const bool above = a > cfg.delta * (1.0 + 1e-12);
				const bool below = band && cfg.delta_lo > 0.0 && a <= cfg.delta_lo;
				if (above || below)
					throw UnfilteredInput("mode " + std::to_string(j) + " has |mu| tau = " + std::to_string(a) +
					                      " outside the filtered band of the kernel configuration");
			}
		}

		// Tail of a kernel decaying like C tau^3 / d^4 beyond a window edge at
		// distance d0 from the cone, integrated along a line with slope m.
		double tail_integral(double c, double tau, double d0, double m)
		{
			if (!(d0 > 0.0))
				return std::numeric_limits<double>::infinity();
			return c * tau * tau * tau / (3.0 * m * d0 * d0 * d0);
		}
	} // namespace

	KernelConfig make_kernel_config(const Scheme &scheme, double tau, double delta, double eps)
	{
		return base_config(scheme, tau, delta, eps);
	}

	KernelConfig make_band_kernel_config(const Scheme &scheme, double tau, double delta_lo, double delta_hi,
	                                     double eps)
	{
		if (!(delta_lo > eps))
			throw PreconditionError("band kernel needs eps < delta_lo");
		if (!(delta_lo < delta_hi))
			throw PreconditionError("band kernel needs delta_lo < delta_hi");
		KernelConfig cfg = base_config(scheme, tau, delta_hi, eps);
		cfg.delta_lo = delta_lo;
		cfg.reverse_cutoff = Cutoff::band(delta_lo - eps, delta_lo, delta_hi, delta_hi + eps);
		return cfg;
	}

	Complex rho(const KernelConfig &cfg, double t, double s)
	{
		const auto n = forward_nodes(cfg, forward_panels(cfg, t, std::abs(s)));
		return sum_with_phase(forward_coefficients(cfg, n, t), n.alpha, s / cfg.tau);
	}

	std::vector<Complex> rho_row(const KernelConfig &cfg, double t, std::span<const double> s_values)
	{
		double smax = 0.0;
		for (double s : s_values)
			smax = std::max(smax, std::abs(s));
		const auto n = forward_nodes(cfg, forward_panels(cfg, t, smax));
		const auto c = forward_coefficients(cfg, n, t);
		std::vector<Complex> out(s_values.size());
		parallel_for(out.size(), [&](std::size_t i) { out[i] = sum_with_phase(c, n.alpha, s_values[i] / cfg.tau); });
		return out;
	}

	Complex rho_without_cutoff(const Scheme &scheme, double tau, double t, double s, int panels)
	{
		// g on the whole Nyquist cell: grow the inversion radius until f covers |y|.
		auto g = [&](double y) {
			if (t == 0.0)
				return 0.0;
			double d = scheme.bounded() ? 0.5 * scheme.radius() : 1.0;
			for (int it = 0; it < 200 && scheme.f(d) < std::abs(y); ++it)
				d = scheme.bounded() ? 0.5 * (d + scheme.radius()) : 2.0 * d;
			return inverse_g(scheme, y, d);
		};
		const auto rule = composite_gauss_legendre(-pi, pi, panels, 16);
		Complex sum{};
		for (std::size_t i = 0; i < rule.size(); ++i)
		{
			const double a = rule.nodes[i];
			sum += rule.weights[i] * std::polar(1.0, (a * s - g(a) * t) / tau);
		}
		return sum / (2.0 * pi * tau);
	}

	Complex q(const KernelConfig &cfg, double t, double s)
	{
		const auto n = reverse_nodes(cfg, reverse_panels(cfg, std::abs(s), std::abs(t)));
		return sum_with_phase(reverse_coefficients(cfg, n, s), n.alpha, -t / cfg.tau);
	}

	std::vector<Complex> q_column(const KernelConfig &cfg, std::span<const double> t_values, double s)
	{
		double tmax = 0.0;
		for (double t : t_values)
			tmax = std::max(tmax, std::abs(t));
		const auto n = reverse_nodes(cfg, reverse_panels(cfg, std::abs(s), tmax));
		const auto c = reverse_coefficients(cfg, n, s);
		std::vector<Complex> out(t_values.size());
		parallel_for(out.size(), [&](std::size_t i) { out[i] = sum_with_phase(c, n.alpha, -t_values[i] / cfg.tau); });
		return out;
	}

	std::pair<long long, long long> forward_window(const KernelConfig &cfg, double t)
	{
		const double a = t / cfg.cone.sup, b = t / cfg.cone.inf;
		const double lo = std::min(a, b) - cfg.window_margin;
		const double hi = std::max(a, b) + cfg.window_margin;
		return {static_cast<long long>(std::floor(lo / cfg.tau)), static_cast<long long>(std::ceil(hi / cfg.tau))};
	}

	std::pair<double, double> reverse_window(const KernelConfig &cfg, double s)
	{
		const double a = s * cfg.cone.inf, b = s * cfg.cone.sup;
		return {std::min(a, b) - cfg.window_margin, std::max(a, b) + cfg.window_margin};
	}

	GridFunction sample_rho(const KernelConfig &cfg, double t)
	{
		const auto [k_lo, k_hi] = forward_window(cfg, t);
		std::vector<double> s;
		for (long long k = k_lo; k <= k_hi; ++k)
			s.push_back(static_cast<double>(k) * cfg.tau);
		return GridFunction{cfg.tau, k_lo, rho_row(cfg, t, s)};
	}

	ForwardResult transmute_forward_detailed(const KernelConfig &cfg, const State &y0, double t)
	{
		check_filtered(cfg, y0, false);
		const auto grid = sample_rho(cfg, t);
		const auto &spec = y0.spectrum();

		ForwardResult res{State(y0.spectrum_ptr()), grid.k_min, grid.k_max(), 0.0};
		parallel_for(y0.size(), [&](std::size_t j) {
			if (y0[j] == Complex{})
				return;
			const double phase = cfg.scheme.f(spec.frequency(j) * cfg.tau);
			Complex s{};
			for (std::size_t i = 0; i < grid.values.size(); ++i)
				s += grid.values[i] * std::polar(1.0, phase * static_cast<double>(grid.k_min + static_cast<long long>(i)));
			res.state[j] = y0[j] * cfg.tau * s;
		});

		// Empirical constant of |rho| <= C tau^3 / d^4 on the outer half of each margin.
		const double s_cone_lo = std::min(t / cfg.cone.sup, t / cfg.cone.inf);
		const double s_cone_hi = std::max(t / cfg.cone.sup, t / cfg.cone.inf);
		double c_lo = 0.0, c_hi = 0.0;
		const double tau3 = cfg.tau * cfg.tau * cfg.tau;
		for (std::size_t i = 0; i < grid.values.size(); ++i)
		{
			const double s = static_cast<double>(grid.k_min + static_cast<long long>(i)) * cfg.tau;
			const double a = std::abs(grid.values[i]);
			if (s < s_cone_lo - 0.5 * cfg.window_margin)
			{
				const double d = (s_cone_lo - s) * cfg.cone.sup;
				c_lo = std::max(c_lo, a * std::pow(d, 4) / tau3);
			}
			if (s > s_cone_hi + 0.5 * cfg.window_margin)
			{
				const double d = (s - s_cone_hi) * cfg.cone.inf;
				c_hi = std::max(c_hi, a * std::pow(d, 4) / tau3);
			}
		}
		const double d_lo = (s_cone_lo - static_cast<double>(grid.k_min) * cfg.tau) * cfg.cone.sup;
		const double d_hi = (static_cast<double>(grid.k_max()) * cfg.tau - s_cone_hi) * cfg.cone.inf;
		// The sum runs in s with step tau, so its tail is the s-integral of the bound
		// (distance grows like slope * s).
		const double tail = tail_integral(c_lo, cfg.tau, d_lo, cfg.cone.sup) +
		                    tail_integral(c_hi, cfg.tau, d_hi, cfg.cone.inf);
		const auto nodes_sum = forward_nodes(cfg, forward_panels(cfg, t, 0.0)).abs_sum;
		const double rounding = cfg.tau * static_cast<double>(grid.values.size()) * 16.0 * DBL_EPSILON * nodes_sum;
		res.tail_estimate = tail + rounding;
		return res;
	}

	State transmute_forward(const KernelConfig &cfg, const State &y0, double t)
	{
		return transmute_forward_detailed(cfg, y0, t).state;
	}

	ReverseResult transmute_reverse_detailed(const KernelConfig &cfg, const State &y0, long long k)
	{
		check_filtered(cfg, y0, true);
		const double s = static_cast<double>(k) * cfg.tau;
		const auto [t_lo, t_hi] = reverse_window(cfg, s);
		const double w_max = (cfg.delta + cfg.eps) / cfg.tau + max_active_frequency(y0);
		const int t_panels =
		    1 + static_cast<int>(std::ceil((t_hi - t_lo) * w_max / (2.0 * pi) * cfg.t_panels_per_oscillation));
		const auto trule = composite_gauss_legendre(t_lo, t_hi, t_panels, cfg.nodes_per_panel);
		const auto qv = q_column(cfg, trule.nodes, s);

		ReverseResult res{State(y0.spectrum_ptr()), t_lo, t_hi, trule.size(), 0.0};
		const auto &spec = y0.spectrum();
		parallel_for(y0.size(), [&](std::size_t j) {
			if (y0[j] == Complex{})
				return;
			const double mu = spec.frequency(j);
			Complex acc{};
			for (std::size_t m = 0; m < trule.size(); ++m)
				acc += trule.weights[m] * qv[m] * std::polar(1.0, mu * trule.nodes[m]);
			res.state[j] = y0[j] * acc;
		});

		const double c_lo_t = std::min(s * cfg.cone.inf, s * cfg.cone.sup);
		const double c_hi_t = std::max(s * cfg.cone.inf, s * cfg.cone.sup);
		double c_lo = 0.0, c_hi = 0.0;
		const double tau3 = cfg.tau * cfg.tau * cfg.tau;
		for (std::size_t m = 0; m < trule.size(); ++m)
		{
			const double t = trule.nodes[m];
			const double a = std::abs(qv[m]);
			if (t < c_lo_t - 0.5 * cfg.window_margin)
				c_lo = std::max(c_lo, a * std::pow(c_lo_t - t, 4) / tau3);
			if (t > c_hi_t + 0.5 * cfg.window_margin)
				c_hi = std::max(c_hi, a * std::pow(t - c_hi_t, 4) / tau3);
		}
		const auto nodes = reverse_nodes(cfg, cfg.min_panels);
		const double rounding = (t_hi - t_lo) * 16.0 * DBL_EPSILON * nodes.abs_sum;
		res.tail_estimate = tail_integral(c_lo, cfg.tau, c_lo_t - t_lo, 1.0) +
		                    tail_integral(c_hi, cfg.tau, t_hi - c_hi_t, 1.0) + rounding;
		return res;
	}

	State transmute_reverse(const KernelConfig &cfg, const State &y0, long long k)
	{
		return transmute_reverse_detailed(cfg, y0, k).state;
	}

	bool rho_off_cone(const KernelConfig &cfg, double t, double s)
	{
		return t + cfg.eps < s * cfg.cone.inf || s * cfg.cone.sup < t - cfg.eps;
	}

	bool q_off_cone(const KernelConfig &cfg, double t, double s)
	{
		return t > s * cfg.cone.sup + cfg.eps || t < s * cfg.cone.inf - cfg.eps;
	}

	DecayProfile decay_profile(const Scheme &scheme, double delta, double eps, std::span<const double> taus, double t,
	                           double s, KernelKind kind)
	{
		if (taus.size() < 2)
			throw PreconditionError("decay profile needs at least two step sizes");
		DecayProfile p;
		std::vector<double> fit_tau, fit_mag;
		for (double tau : taus)
		{
			const auto cfg = make_kernel_config(scheme, tau, delta, eps);
			const bool off = kind == KernelKind::Rho ? rho_off_cone(cfg, t, s) : q_off_cone(cfg, t, s);
			if (!off)
				throw PointInsideCone("(t, s) = (" + std::to_string(t) + ", " + std::to_string(s) +
				                      ") lies on the group-velocity cone for eps = " + std::to_string(eps));
			double mag = 0.0, node_sum = 0.0;
			if (kind == KernelKind::Rho)
			{
				const auto n = forward_nodes(cfg, forward_panels(cfg, t, std::abs(s)));
				mag = std::abs(sum_with_phase(forward_coefficients(cfg, n, t), n.alpha, s / tau));
				node_sum = n.abs_sum;
			}
			else
			{
				const auto n = reverse_nodes(cfg, reverse_panels(cfg, std::abs(s), std::abs(t)));
				mag = std::abs(sum_with_phase(reverse_coefficients(cfg, n, s), n.alpha, -t / tau));
				node_sum = n.abs_sum;
			}
			const double floor = 64.0 * DBL_EPSILON * node_sum;
			p.taus.push_back(tau);
			p.magnitudes.push_back(mag);
			p.floors.push_back(floor);
			if (mag > floor)
			{
				fit_tau.push_back(tau);
				fit_mag.push_back(mag);
			}
		}
		p.points_used = fit_tau.size();
		p.slope = fit_tau.size() >= 2 ? fit_loglog_slope(fit_tau, fit_mag) : 0.0;
		return p;
	}

	OperatorNormCheck operator_norm_check(const KernelConfig &cfg, int trials, std::uint64_t seed, int support_points)
	{
		if (trials < 1 || support_points < 1)
			throw PreconditionError("operator norm check needs trials >= 1 and support_points >= 1");
		const double tau = cfg.tau;
		const int K = support_points;
		const double s_max = (K - 1) * tau;

		OperatorNormCheck out;
		out.trials = trials;
		out.forward_bound = cfg.forward_cutoff.sup_norm() * std::sqrt(cfg.cone.sup);
		out.reverse_bound = cfg.reverse_cutoff.sup_norm() / std::sqrt(cfg.cone.inf);

		// Forward: (I w)(t) = tau sum_k rho(t, k tau) w_k sampled at Gauss nodes in t,
		// inputs normalized by x_k = sqrt(tau) w_k.
		const double t_lo = std::min(0.0, s_max * cfg.cone.inf) - cfg.window_margin;
		const double t_hi = s_max * cfg.cone.sup + cfg.window_margin;
		const double freq = (cfg.delta + cfg.eps) / tau;
		const int t_panels = 1 + static_cast<int>(std::ceil((t_hi - t_lo) * freq / (2.0 * pi) * cfg.t_panels_per_oscillation));
		const auto trule = composite_gauss_legendre(t_lo, t_hi, t_panels, cfg.nodes_per_panel);
		const auto fn = forward_nodes(cfg, forward_panels(cfg, std::max(std::abs(t_lo), std::abs(t_hi)), s_max));
		const std::size_t nn = fn.alpha.size();
		std::vector<Complex> grid_phase(nn * K);
		for (std::size_t i = 0; i < nn; ++i)
			for (int k = 0; k < K; ++k)
				grid_phase[i * K + k] = std::polar(1.0, fn.alpha[i] * k);

		Eigen::MatrixXcd A(static_cast<Eigen::Index>(trule.size()), K);
		parallel_for(trule.size(), [&](std::size_t m) {
			std::vector<Complex> row(K);
			const double t = trule.nodes[m];
			for (std::size_t i = 0; i < nn; ++i)
			{
				const Complex c = fn.weight[i] * std::polar(1.0, -fn.g[i] * t / tau);
				for (int k = 0; k < K; ++k)
					row[k] += c * grid_phase[i * K + k];
			}
			const double scale = std::sqrt(trule.weights[m]) * std::sqrt(tau);
			for (int k = 0; k < K; ++k)
				A(static_cast<Eigen::Index>(m), k) = scale * row[k];
		});

		// Reverse: (J v)_k = int q(t, k tau) v(t) dt on orthonormal cell indicators
		// of width tau, output weighted by sqrt(tau).
		const double cell_hi = K * tau;
		const double s_lo = std::min(0.0, cell_hi / cfg.cone.sup) - cfg.window_margin;
		const double s_hi = cell_hi / cfg.cone.inf + cfg.window_margin;
		const auto k_lo = static_cast<long long>(std::floor(s_lo / tau));
		const auto k_hi = static_cast<long long>(std::ceil(s_hi / tau));
		const auto rn = reverse_nodes(cfg, reverse_panels(cfg, std::max(std::abs(s_lo), std::abs(s_hi)), cell_hi));
		const std::size_t rm = rn.alpha.size();
		// int_{i tau}^{(i+1) tau} exp(-i alpha t / tau) dt / sqrt(tau)
		std::vector<Complex> cell_phase(rm * K);
		for (std::size_t n = 0; n < rm; ++n)
		{
			const double a = rn.alpha[n];
			const Complex phi = std::abs(a) < 1e-8 ? Complex(1.0, -0.5 * a) : (1.0 - std::polar(1.0, -a)) / (I * a);
			for (int i = 0; i < K; ++i)
				cell_phase[n * K + i] = std::sqrt(tau) * std::polar(1.0, -a * i) * phi;
		}
		const auto rows = static_cast<std::size_t>(k_hi - k_lo + 1);
		Eigen::MatrixXcd B(static_cast<Eigen::Index>(rows), K);
		parallel_for(rows, [&](std::size_t r) {
			const double s = static_cast<double>(k_lo + static_cast<long long>(r)) * tau;
			std::vector<Complex> row(K);
			for (std::size_t n = 0; n < rm; ++n)
			{
				const Complex c = rn.weight[n] * std::polar(1.0, rn.f[n] * s / tau);
				for (int i = 0; i < K; ++i)
					row[i] += c * cell_phase[n * K + i];
			}
			for (int i = 0; i < K; ++i)
				B(static_cast<Eigen::Index>(r), i) = std::sqrt(tau) * row[i];
		});

		std::mt19937_64 rng(seed);
		std::normal_distribution<double> nd;
		for (int trial = 0; trial < trials; ++trial)
		{
			Eigen::VectorXcd x(K);
			for (int k = 0; k < K; ++k)
				x(k) = Complex(nd(rng), nd(rng));
			x.normalize();
			out.forward_measured = std::max(out.forward_measured, (A * x).norm());
			Eigen::VectorXcd v(K);
			for (int k = 0; k < K; ++k)
				v(k) = Complex(nd(rng), nd(rng));
			v.normalize();
			out.reverse_measured = std::max(out.reverse_measured, (B * v).norm());
		}
		out.forward_top_singular = Eigen::JacobiSVD<Eigen::MatrixXcd>(A).singularValues()(0);
		out.reverse_top_singular = Eigen::JacobiSVD<Eigen::MatrixXcd>(B).singularValues()(0);
		return out;
	}
} // namespace transmute
