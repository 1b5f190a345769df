#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "transmute/error.hpp"
#include "transmute/kernels.hpp"
#include "transmute/observability.hpp"
#include "transmute/packet.hpp"
#include "transmute/plotdata.hpp"
#include "transmute/scheme.hpp"

#ifndef TRANSMUTE_VERSION
#define TRANSMUTE_VERSION "0.0.0"
#endif

namespace transmute::cli
{
	using nlohmann::json;

	namespace
	{
		constexpr double pi = std::numbers::pi;

		const std::vector<std::string> &experiments()
		{
			static const std::vector<std::string> names{"certify",   "kernel", "reconstruct", "obs-sweep",
			                                            "sharpness", "ingham", "weak-obs"};
			return names;
		}

		void apply_defaults(ExperimentConfig &c)
		{
			const std::vector<double> coarse{0.05, 0.025, 0.0125, 0.00625};
			if (c.experiment == "certify")
				c.delta = 3.0;
			else if (c.experiment == "kernel")
				c.tau_ladder = {0.02, 0.01, 0.005, 0.0025};
			else if (c.experiment == "obs-sweep")
			{
				c.delta = 2.0;
				c.T = 2.4;
				c.tau_ladder = coarse;
			}
			else if (c.experiment == "sharpness")
				c.tau_ladder = {1e-4, 1e-5, 1e-6};
			else if (c.experiment == "ingham")
			{
				c.T = 1.5;
				c.tau_ladder = coarse;
			}
			else if (c.experiment == "weak-obs")
			{
				c.scheme = "newmark:0.25";
				c.T = 2.6;
				c.T0 = 2.0;
				c.tau_ladder = coarse;
			}
		}

		template <class T>
		void read(const json &doc, const char *key, T &dst, std::vector<std::string> &seen)
		{
			seen.emplace_back(key);
			if (!doc.contains(key))
				return;
			try
			{
				dst = doc.at(key).get<T>();
			}
			catch (const json::exception &e)
			{
				throw ValidationError(std::string("config field '") + key + "' has the wrong type: " + e.what());
			}
		}

		std::string num(double v)
		{
			std::ostringstream os;
			os.precision(10);
			os << v;
			return os.str();
		}
	} // namespace

	ExperimentConfig config_from_json(const std::string &experiment, const json &doc)
	{
		if (std::find(experiments().begin(), experiments().end(), experiment) == experiments().end())
			throw ValidationError("unknown experiment '" + experiment + "'");
		if (!doc.is_null() && !doc.is_object())
			throw ValidationError("config document must be a JSON object");
		if (doc.contains("experiment") && doc.at("experiment") != experiment)
			throw ValidationError("config file is for experiment '" + doc.at("experiment").dump() +
			                      "', not '" + experiment + "'");

		ExperimentConfig c;
		c.experiment = experiment;
		apply_defaults(c);
		if (doc.is_null())
			return c;

		std::vector<std::string> seen{"experiment"};
		std::string out = c.out.string();
		read(doc, "scheme", c.scheme, seen);
		read(doc, "tau", c.tau, seen);
		read(doc, "tau_ladder", c.tau_ladder, seen);
		read(doc, "delta", c.delta, seen);
		read(doc, "eps", c.eps, seen);
		read(doc, "T", c.T, seen);
		read(doc, "T0", c.T0, seen);
		read(doc, "modes", c.modes, seen);
		read(doc, "x0", c.x0, seen);
		read(doc, "family", c.family, seen);
		read(doc, "out", out, seen);
		read(doc, "seed", c.seed, seen);
		read(doc, "samples", c.samples, seen);
		read(doc, "t_points", c.t_points, seen);
		read(doc, "s_points", c.s_points, seen);
		read(doc, "decay_t", c.decay_t, seen);
		read(doc, "decay_s", c.decay_s, seen);
		read(doc, "decay_q_t", c.decay_q_t, seen);
		read(doc, "decay_q_s", c.decay_q_s, seen);
		read(doc, "window_margin", c.window_margin, seen);
		read(doc, "liouville_r", c.liouville_r, seen);
		read(doc, "liouville_J", c.liouville_J, seen);
		read(doc, "ball_eps", c.ball_eps, seen);
		read(doc, "reverse_steps", c.reverse_steps, seen);
		read(doc, "tolerance", c.tolerance, seen);
		c.out = out;
		for (const auto &item : doc.items())
			if (std::find(seen.begin(), seen.end(), item.key()) == seen.end())
				throw ValidationError("unknown config field '" + item.key() + "'");
		return c;
	}

	json config_to_json(const ExperimentConfig &c)
	{
		return json{{"experiment", c.experiment},
		            {"scheme", c.scheme},
		            {"tau", c.tau},
		            {"tau_ladder", c.tau_ladder},
		            {"delta", c.delta},
		            {"eps", c.eps},
		            {"T", c.T},
		            {"T0", c.T0},
		            {"modes", c.modes},
		            {"x0", c.x0},
		            {"family", c.family},
		            {"out", c.out.generic_string()},
		            {"seed", c.seed},
		            {"samples", c.samples},
		            {"t_points", c.t_points},
		            {"s_points", c.s_points},
		            {"decay_t", c.decay_t},
		            {"decay_s", c.decay_s},
		            {"decay_q_t", c.decay_q_t},
		            {"decay_q_s", c.decay_q_s},
		            {"window_margin", c.window_margin},
		            {"liouville_r", c.liouville_r},
		            {"liouville_J", c.liouville_J},
		            {"ball_eps", c.ball_eps},
		            {"reverse_steps", c.reverse_steps},
		            {"tolerance", c.tolerance}};
	}

	namespace
	{
		Scheme scheme_of(const ExperimentConfig &c)
		{
			try
			{
				return parse_scheme(c.scheme);
			}
			catch (const PreconditionError &e)
			{
				throw ValidationError(e.what());
			}
		}

		void require(bool ok, const std::string &message)
		{
			if (!ok)
				throw ValidationError(message);
		}

		void require_in_domain(const Scheme &s, double alpha, const std::string &what)
		{
			require(s.in_domain(alpha), what + " = " + num(alpha) + " >= R = " + num(s.radius()) + " of scheme " +
			                                s.name() +
			                                ": violates the range hypothesis, f must map (-R, R) into (-pi, pi)");
		}

		bool uses_ladder(const std::string &e)
		{
			return e == "kernel" || e == "obs-sweep" || e == "sharpness" || e == "ingham" || e == "weak-obs";
		}
	} // namespace

	void validate(const ExperimentConfig &c)
	{
		const Scheme s = scheme_of(c);
		require(c.tau > 0.0, "tau must be positive");
		require(c.delta > 0.0, "delta must be positive");
		require(c.T > 0.0 && c.T0 > 0.0, "T and T0 must be positive");
		require(c.modes >= 1, "modes N must be at least 1");
		if (uses_ladder(c.experiment))
		{
			require(c.tau_ladder.size() >= 2, "tau ladder needs at least two steps");
			for (std::size_t i = 0; i < c.tau_ladder.size(); ++i)
			{
				require(c.tau_ladder[i] > 0.0, "tau ladder entries must be positive");
				require(i == 0 || c.tau_ladder[i] < c.tau_ladder[i - 1], "tau ladder must be strictly decreasing");
			}
		}
		if (c.experiment == "certify")
		{
			require(c.samples >= 8, "certify needs samples >= 8");
			require_in_domain(s, c.delta, "delta");
		}
		else if (c.experiment == "kernel" || c.experiment == "reconstruct")
		{
			require(c.eps > 0.0, "eps must be positive");
			require_in_domain(s, c.delta + c.eps, "delta + eps");
			require(c.window_margin >= 0.0, "window_margin must be non-negative");
			require(c.t_points >= 1, "t_points must be at least 1");
			if (c.experiment == "kernel")
				require(c.s_points >= 2, "s_points must be at least 2");
			else
				require(c.tolerance > 0.0, "tolerance must be positive");
		}
		else if (c.experiment == "obs-sweep" || c.experiment == "ingham" || c.experiment == "weak-obs")
		{
			require_in_domain(s, c.delta, "delta");
			if (c.experiment == "obs-sweep")
				require(c.family == "transport" || c.family == "wave", "family must be 'transport' or 'wave'");
		}
		else if (c.experiment == "sharpness")
			require(c.ball_eps > 0.0 && c.ball_eps < 0.5, "ball_eps must lie in (0, 1/2)");

		const bool needs_x0 = c.experiment == "sharpness" || c.experiment == "weak-obs" ||
		                      (c.experiment == "obs-sweep" && c.family == "wave");
		if (needs_x0)
			require(c.x0 > 0.0 && c.x0 < 1.0, "x0 must lie in (0, 1)");
	}

	namespace
	{
		struct Artifact
		{
			std::string file;
			Series series;
			json tolerances = json::object();
			json extra = json::object();
		};

		std::string metadata(const ExperimentConfig &c, const Artifact &a)
		{
			json m{{"config", config_to_json(c)}, {"version", TRANSMUTE_VERSION}, {"tolerances", a.tolerances}};
			if (!a.extra.empty())
				m["results"] = a.extra;
			return m.dump();
		}

		json tol(double target, double achieved, const std::string &kind, bool met)
		{
			return json{{"target", target}, {"achieved", achieved}, {"kind", kind}, {"met", met}};
		}

		State random_filtered_state(const ExperimentConfig &c, double tau)
		{
			auto spec = make_transport_spectrum(c.modes);
			std::mt19937_64 rng(c.seed);
			std::normal_distribution<double> nd;
			State y(spec);
			for (std::size_t j = 0; j < y.size(); ++j)
				y[j] = Complex(nd(rng), nd(rng));
			return filter(y, FilterBand::upto(c.delta / tau));
		}

		KernelConfig kernel_config(const ExperimentConfig &c, const Scheme &s, double tau)
		{
			auto k = make_kernel_config(s, tau, c.delta, c.eps);
			if (c.window_margin > 0.0)
				k.window_margin = c.window_margin;
			return k;
		}

		std::vector<Artifact> run_certify(const ExperimentConfig &c, bool &met)
		{
			const auto rep = certify(scheme_of(c), c.delta, c.samples, c.seed);
			Artifact a{"certify.csv", {{"check", "pass", "worst_alpha", "worst_value"}, {}}};
			json details = json::object();
			for (const auto &chk : rep.checks)
			{
				a.series.rows.push_back({chk.name, static_cast<long long>(chk.pass), chk.worst_alpha, chk.worst_value});
				details[chk.name] = chk.detail;
			}
			met = rep.all_pass();
			a.tolerances = json{{"all_pass", met}, {"samples", rep.samples}};
			a.extra = details;
			return {a};
		}

		std::vector<Artifact> run_kernel(const ExperimentConfig &c, bool &met)
		{
			const Scheme s = scheme_of(c);
			const auto cfg = kernel_config(c, s, c.tau);
			Artifact grid{"kernel_grid.csv", {{"t", "s", "re", "im", "abs"}, {}}};
			const double s_lo = -1.0, s_hi = c.T / cfg.cone.inf + 1.0;
			std::vector<double> svals(c.s_points);
			for (int i = 0; i < c.s_points; ++i)
				svals[i] = s_lo + (s_hi - s_lo) * i / (c.s_points - 1);
			for (int i = 0; i < c.t_points; ++i)
			{
				const double t = c.t_points == 1 ? 0.0 : c.T * i / (c.t_points - 1);
				const auto row = rho_row(cfg, t, svals);
				for (std::size_t j = 0; j < svals.size(); ++j)
					grid.series.rows.push_back({t, svals[j], row[j].real(), row[j].imag(), std::abs(row[j])});
			}

			Artifact decay{"decay.csv", {{"kernel", "tau", "abs_value", "rounding_floor"}, {}}};
			DecayProfile pr, pq;
			try
			{
				pr = decay_profile(s, c.delta, c.eps, c.tau_ladder, c.decay_t, c.decay_s, KernelKind::Rho);
				pq = decay_profile(s, c.delta, c.eps, c.tau_ladder, c.decay_q_t, c.decay_q_s, KernelKind::Q);
			}
			catch (const PointInsideCone &e)
			{
				throw ValidationError(e.what());
			}
			for (std::size_t i = 0; i < pr.taus.size(); ++i)
				decay.series.rows.push_back({std::string("rho"), pr.taus[i], pr.magnitudes[i], pr.floors[i]});
			for (std::size_t i = 0; i < pq.taus.size(); ++i)
				decay.series.rows.push_back({std::string("q"), pq.taus[i], pq.magnitudes[i], pq.floors[i]});
			met = pr.slope >= 3.0 && pq.slope >= 3.0;
			decay.tolerances = json{{"rho_slope", tol(3.0, pr.slope, "min", pr.slope >= 3.0)},
			                        {"q_slope", tol(3.0, pq.slope, "min", pq.slope >= 3.0)}};
			grid.tolerances = decay.tolerances;
			return {grid, decay};
		}

		std::vector<Artifact> run_reconstruct(const ExperimentConfig &c, bool &met)
		{
			const Scheme s = scheme_of(c);
			const auto cfg = kernel_config(c, s, c.tau);
			const State y = random_filtered_state(c, c.tau);
			Artifact fwd{"reconstruct.csv", {{"t", "error", "tail_estimate"}, {}}};
			double worst_f = 0.0;
			for (int i = 1; i <= c.t_points; ++i)
			{
				const double t = c.T * i / (c.t_points + 1);
				const auto r = transmute_forward_detailed(cfg, y, t);
				const double e = relative_error(r.state, evolve_continuous(y, t));
				worst_f = std::max(worst_f, e);
				fwd.series.rows.push_back({t, e, r.tail_estimate});
			}
			Artifact rev{"reverse.csv", {{"k", "error", "tail_estimate"}, {}}};
			double worst_r = 0.0;
			for (long long k : c.reverse_steps)
			{
				const auto r = transmute_reverse_detailed(cfg, y, k);
				const double e = relative_error(r.state, evolve_discrete(y, k, s, c.tau));
				worst_r = std::max(worst_r, e);
				rev.series.rows.push_back({k, e, r.tail_estimate});
			}
			met = worst_f <= c.tolerance && worst_r <= c.tolerance;
			fwd.tolerances = json{{"forward_error", tol(c.tolerance, worst_f, "max", worst_f <= c.tolerance)},
			                      {"reverse_error", tol(c.tolerance, worst_r, "max", worst_r <= c.tolerance)}};
			rev.tolerances = fwd.tolerances;
			return {fwd, rev};
		}

		// Ratios value(tau) / value(tau / 4) for every ladder pair a factor 4 apart.
		std::vector<double> quartering_ratios(std::span<const double> taus, std::span<const double> v)
		{
			std::vector<double> out;
			for (std::size_t i = 0; i < taus.size(); ++i)
				for (std::size_t j = i + 1; j < taus.size(); ++j)
					if (std::abs(taus[i] / taus[j] - 4.0) < 1e-9)
						out.push_back(v[i] / v[j]);
			return out;
		}

		// Bounded regime: spread < 50 %. Divergent regime: lower bound shrinks by > 2 per quartering.
		json regime_tolerance(bool above, std::span<const double> taus, std::span<const double> lower, bool &met)
		{
			if (above)
			{
				const double var = relative_variation(lower);
				met = var < 0.5;
				return json{{"regime", "above threshold"}, {"variation", tol(0.5, var, "max_exclusive", met)}};
			}
			const auto ratios = quartering_ratios(taus, lower);
			const double worst =
			    ratios.empty() ? std::numeric_limits<double>::quiet_NaN() : *std::min_element(ratios.begin(), ratios.end());
			met = !ratios.empty() && worst > 2.0;
			return json{{"regime", "below threshold"},
			            {"quartering_ratio", tol(2.0, worst, "min_exclusive", met)},
			            {"ratios", ratios}};
		}

		std::vector<Artifact> run_sweep(const ExperimentConfig &c, bool &met)
		{
			const Scheme s = scheme_of(c);
			const auto family = c.family == "wave" ? wave_family(c.x0) : transport_family();
			const auto rows = uniformity_sweep(family, s, c.delta, c.T, c.tau_ladder);
			Artifact a{"sweep.csv", {{"tau", "T", "delta", "lambda_min", "lambda_max", "C_obs", "modes"}, {}}};
			std::vector<double> lmin;
			for (const auto &r : rows)
			{
				a.series.rows.push_back({r.tau, r.T, r.delta, r.lambda_min, r.lambda_max, r.c_obs,
				                         static_cast<long long>(r.modes)});
				lmin.push_back(r.lambda_min);
			}
			const double threshold = uniform_time_threshold(s, c.delta, c.T0);
			a.tolerances = regime_tolerance(c.T > threshold, c.tau_ladder, lmin, met);
			a.extra = json{{"threshold", threshold}};
			return {a};
		}

		std::vector<Artifact> run_ingham(const ExperimentConfig &c, bool &met)
		{
			const Scheme s = scheme_of(c);
			Artifact a{"ingham.csv", {{"tau", "T", "delta", "c_lower", "c_upper", "modes"}, {}}};
			std::vector<double> lower;
			for (double tau : c.tau_ladder)
			{
				const auto b = ingham_bounds(lattice_frequencies(tau, c.delta), 2.0 * pi, s, tau, c.delta, c.T);
				a.series.rows.push_back({tau, c.T, c.delta, b.c_lower, b.c_upper, static_cast<long long>(b.modes)});
				lower.push_back(b.c_lower);
			}
			// Gap 2 pi: threshold 2 pi / (gap inf f').
			const double threshold = uniform_time_threshold(s, c.delta, 1.0);
			a.tolerances = regime_tolerance(c.T > threshold, c.tau_ladder, lower, met);
			a.extra = json{{"threshold", threshold}, {"gap", 2.0 * pi}};
			return {a};
		}

		std::vector<Artifact> run_weak_obs(const ExperimentConfig &c, bool &met)
		{
			const auto lv = liouville_check(c.x0, c.liouville_r, c.liouville_J);
			if (!lv.pass)
				throw ValidationError("x0 = " + num(c.x0) + " fails the Diophantine condition on sin(j pi x0): " +
				                      lv.detail);
			const Scheme s = scheme_of(c);
			const auto rows = weak_obs_sweep(s, c.x0, c.delta, c.T, c.tau_ladder);
			Artifact a{"weak_obs.csv", {{"tau", "lambda_min", "modes"}, {}}};
			std::vector<double> lmin;
			for (const auto &r : rows)
			{
				a.series.rows.push_back({r.tau, r.lambda_min, static_cast<long long>(r.modes)});
				lmin.push_back(r.lambda_min);
			}
			const double threshold = uniform_time_threshold(s, c.delta, c.T0);
			a.tolerances = regime_tolerance(c.T > threshold, c.tau_ladder, lmin, met);
			a.extra = json{{"threshold", threshold},
			               {"liouville", {{"pass", lv.pass}, {"constant", lv.constant}, {"min_margin", lv.min_margin}}}};
			return {a};
		}

		std::vector<Artifact> run_sharpness(const ExperimentConfig &c, bool &met)
		{
			Artifact a{"packet.csv", {{"tau", "norm2_ratio", "outside_mass", "modes"}, {}}};
			std::vector<double> mass;
			double dev = 0.0;
			for (double tau : c.tau_ladder)
			{
				const int n = packet_modes(tau, c.delta);
				const auto p = sharpness_packet(make_transport_spectrum(n), tau, c.delta, c.x0);
				const double ratio = p.norm() * p.norm() * 2.0 * pi;
				dev = std::max(dev, std::abs(ratio - 1.0));
				mass.push_back(outside_mass(p, tau, c.delta, c.x0, c.ball_eps));
				a.series.rows.push_back({tau, ratio, mass.back(), static_cast<long long>(p.size())});
			}
			const double slope = fit_loglog_slope(c.tau_ladder, mass);
			met = dev <= 0.05 && slope >= 3.5;
			a.tolerances = json{{"norm_deviation", tol(0.05, dev, "max", dev <= 0.05)},
			                    {"outside_mass_slope", tol(3.5, slope, "min", slope >= 3.5)}};
			return {a};
		}
	} // namespace

	RunResult run(const ExperimentConfig &c)
	{
		bool met = true;
		std::vector<Artifact> arts;
		if (c.experiment == "certify")
			arts = run_certify(c, met);
		else if (c.experiment == "kernel")
			arts = run_kernel(c, met);
		else if (c.experiment == "reconstruct")
			arts = run_reconstruct(c, met);
		else if (c.experiment == "obs-sweep")
			arts = run_sweep(c, met);
		else if (c.experiment == "ingham")
			arts = run_ingham(c, met);
		else if (c.experiment == "weak-obs")
			arts = run_weak_obs(c, met);
		else if (c.experiment == "sharpness")
			arts = run_sharpness(c, met);
		else
			throw ValidationError("unknown experiment '" + c.experiment + "'");

		RunResult res;
		for (const auto &a : arts)
		{
			const auto path = c.out / a.file;
			emit_plotdata(a.series, path, metadata(c, a));
			res.files.push_back(path);
		}
		res.exit_code = met ? Success : ToleranceNotMet;
		res.summary = c.experiment + ": " + (met ? "targets met" : "targets NOT met") + " " +
		              arts.front().tolerances.dump();
		return res;
	}

	int main_entry(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
	{
		CLI::App app{"Transmutation kernels and uniform observability experiments", "transmute"};
		app.require_subcommand(1);
		app.set_version_flag("--version", std::string(TRANSMUTE_VERSION));

		std::string config_path, out_dir, scheme, ladder_text;
		std::uint64_t seed = 0;
		double tau = 0, delta = 0, eps = 0, T = 0, x0 = 0;
		int modes = 0;

		const char *help = "certify | kernel | reconstruct | obs-sweep | sharpness | ingham | weak-obs";
		std::vector<CLI::App *> subs;
		for (const auto &name : experiments())
		{
			auto *sub = app.add_subcommand(name, help);
			sub->add_option("--config", config_path, "JSON config file (flags override its fields)");
			sub->add_option("--out", out_dir, "output directory");
			sub->add_option("--seed", seed, "64-bit seed of randomized checks");
			sub->add_option("--tau", tau, "time step");
			sub->add_option("--tau-ladder", ladder_text, "comma-separated decreasing steps, e.g. 0.05,0.025");
			sub->add_option("--delta", delta, "filter radius (alpha = mu tau units)");
			sub->add_option("--eps", eps, "cutoff margin");
			sub->add_option("--T", T, "observation / final time");
			sub->add_option("--scheme", scheme, "midpoint | gauss4 | newmark:<beta> | exact");
			sub->add_option("--modes", modes, "spectrum truncation N");
			sub->add_option("--x0", x0, "observation / packet point in (0, 1)");
			subs.push_back(sub);
		}

		try
		{
			app.parse(argc, argv);
		}
		catch (const CLI::CallForHelp &e)
		{
			app.exit(e, out, err);
			return Success;
		}
		catch (const CLI::CallForVersion &e)
		{
			app.exit(e, out, err);
			return Success;
		}
		catch (const CLI::ParseError &e)
		{
			app.exit(e, out, err);
			return ValidationFailure;
		}

		CLI::App *sub = app.get_subcommands().front();
		const auto given = [&](const char *flag) { return sub->get_option(flag)->count() > 0; };

		try
		{
			json doc = json::object();
			if (given("--config"))
			{
				std::ifstream is(config_path);
				if (!is)
					throw ValidationError("cannot read config file " + config_path);
				try
				{
					doc = json::parse(is);
				}
				catch (const json::parse_error &e)
				{
					throw ValidationError("config file is not valid JSON: " + std::string(e.what()));
				}
			}
			if (given("--out"))
				doc["out"] = out_dir;
			if (given("--seed"))
				doc["seed"] = seed;
			if (given("--tau"))
				doc["tau"] = tau;
			if (given("--tau-ladder"))
			{
				std::vector<double> ladder;
				std::stringstream ss(ladder_text);
				std::string item;
				while (std::getline(ss, item, ','))
				{
					try
					{
						std::size_t used = 0;
						ladder.push_back(std::stod(item, &used));
						if (used != item.size())
							throw std::invalid_argument(item);
					}
					catch (const std::exception &)
					{
						throw ValidationError("cannot parse tau ladder entry '" + item + "'");
					}
				}
				doc["tau_ladder"] = ladder;
			}
			if (given("--delta"))
				doc["delta"] = delta;
			if (given("--eps"))
				doc["eps"] = eps;
			if (given("--T"))
				doc["T"] = T;
			if (given("--scheme"))
				doc["scheme"] = scheme;
			if (given("--modes"))
				doc["modes"] = modes;
			if (given("--x0"))
				doc["x0"] = x0;

			const auto cfg = config_from_json(sub->get_name(), doc);
			validate(cfg);
			const auto res = run(cfg);
			out << res.summary << '\n';
			for (const auto &f : res.files)
				out << "wrote " << f.generic_string() << '\n';
			return res.exit_code;
		}
		catch (const ValidationError &e)
		{
			err << "validation error: " << e.what() << '\n';
			return ValidationFailure;
		}
		catch (const Error &e)
		{
			// Library errors caused by out-of-domain parameters count as validation failures.
			const bool domain = dynamic_cast<const PreconditionError *>(&e) ||
			                    dynamic_cast<const FrequencyOutOfSchemeDomain *>(&e) ||
			                    dynamic_cast<const TargetOutOfRange *>(&e) ||
			                    dynamic_cast<const UnfilteredInput *>(&e) || dynamic_cast<const PointInsideCone *>(&e);
			err << (domain ? "validation error: " : "error: ") << e.what() << '\n';
			return domain ? ValidationFailure : 1;
		}
		catch (const std::exception &e)
		{
			err << "error: " << e.what() << '\n';
			return 1;
		}
	}
} // namespace transmute::cli
