#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace transmute::cli
{
	enum ExitCode : int
	{
		Success = 0,
		ValidationFailure = 2,
		ToleranceNotMet = 3
	};

	/// A configuration value outside its admissible domain.
	class ValidationError : public std::runtime_error
	{
	public:
		using std::runtime_error::runtime_error;
	};

	struct ExperimentConfig
	{
		/// certify | kernel | reconstruct | obs-sweep | sharpness | ingham | weak-obs
		std::string experiment;
		std::string scheme = "midpoint";
		double tau = 0.01;
		std::vector<double> tau_ladder;
		double delta = 1.0;
		double eps = 0.5;
		double T = 1.0;
		double T0 = 1.0;
		int modes = 64;
		double x0 = 0.41421356237309503;
		/// "transport" or "wave" (obs-sweep).
		std::string family = "transport";
		std::filesystem::path out = ".";
		std::uint64_t seed = 1;

		/// certify
		int samples = 4096;
		/// kernel grid / reconstruct time points
		int t_points = 9;
		int s_points = 41;
		/// off-cone points of the rho and q decay measurements
		double decay_t = 0.2;
		double decay_s = 2.0;
		double decay_q_t = 2.0;
		double decay_q_s = 0.5;
		/// truncation margin of kernel sums in time units; 0 keeps 5 eps
		double window_margin = 0.0;
		/// weak-obs
		double liouville_r = -2.0;
		int liouville_J = 10000;
		/// sharpness: geodesic radius of the ball around x0
		double ball_eps = 0.25;
		/// reconstruct: steps k of the reverse formula
		std::vector<long long> reverse_steps{1, 10, 100};
		/// reconstruct target on the relative X-error
		double tolerance = 1e-6;
	};

	/// Defaults for an experiment, overlaid by `doc` (unknown keys are rejected).
	ExperimentConfig config_from_json(const std::string &experiment, const nlohmann::json &doc);

	nlohmann::json config_to_json(const ExperimentConfig &cfg);

	/// Throws ValidationError naming the violated constraint.
	void validate(const ExperimentConfig &cfg);

	struct RunResult
	{
		int exit_code = Success;
		std::vector<std::filesystem::path> files;
		std::string summary;
	};

	/// Runs a validated experiment, writing CSV artifacts under cfg.out. Each file
	/// starts with a "# {json}" line carrying the config echo, version and the
	/// target / achieved tolerances.
	RunResult run(const ExperimentConfig &cfg);

	/// Full driver: parse arguments, merge config file and flags, validate, run.
	/// Returns the process exit code; messages go to `out` / `err`.
	int main_entry(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
} // namespace transmute::cli
