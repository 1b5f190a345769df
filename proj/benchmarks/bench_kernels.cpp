#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "transmute/kernels.hpp"
#include "transmute/observability.hpp"

using namespace transmute;

namespace
{
	State random_filtered(SpectrumPtr spec, double tau, double delta)
	{
		std::mt19937_64 rng(1);
		std::normal_distribution<double> nd;
		State s(std::move(spec));
		for (std::size_t j = 0; j < s.size(); ++j)
			s[j] = Complex(nd(rng), nd(rng));
		return filter(s, FilterBand::upto(delta / tau));
	}
} // namespace

static void BM_RhoPoint(benchmark::State &state)
{
	const auto cfg = make_kernel_config(midpoint(), 1.0 / static_cast<double>(state.range(0)), 1.0, 0.5);
	for (auto _ : state)
		benchmark::DoNotOptimize(rho(cfg, 0.5, 0.3));
}
BENCHMARK(BM_RhoPoint)->Arg(50)->Arg(100)->Arg(200);

static void BM_RhoRow(benchmark::State &state)
{
	const auto cfg = make_kernel_config(midpoint(), 0.01, 1.0, 0.5);
	std::vector<double> s(static_cast<std::size_t>(state.range(0)));
	for (std::size_t i = 0; i < s.size(); ++i)
		s[i] = 0.01 * static_cast<double>(i);
	for (auto _ : state)
		benchmark::DoNotOptimize(rho_row(cfg, 0.5, s));
	state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RhoRow)->Arg(64)->Arg(512);

static void BM_TransmuteForward(benchmark::State &state)
{
	const double tau = 1.0 / static_cast<double>(state.range(0));
	auto spec = make_transport_spectrum(64);
	const auto cfg = make_kernel_config(midpoint(), tau, 1.0, 0.5);
	const State y0 = random_filtered(spec, tau, 1.0);
	for (auto _ : state)
		benchmark::DoNotOptimize(transmute_forward(cfg, y0, 0.5));
}
BENCHMARK(BM_TransmuteForward)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_DiscreteGramian(benchmark::State &state)
{
	const double tau = 1.0 / static_cast<double>(state.range(0));
	auto spec = make_transport_spectrum(static_cast<int>(2.0 / tau / 6.283185307179586) + 1);
	const auto obs = point_obs_transport(*spec);
	for (auto _ : state)
		benchmark::DoNotOptimize(discrete_gramian(*spec, obs, midpoint(), tau, 2.4, FilterBand::upto(2.0 / tau)));
}
BENCHMARK(BM_DiscreteGramian)->Arg(40)->Arg(160)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
