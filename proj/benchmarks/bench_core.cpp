#include <benchmark/benchmark.h>

#include <cmath>

#include "steklov/mode_solver.hpp"
#include "steklov/rayleigh.hpp"
#include "steklov/spectrum.hpp"

namespace {

using namespace steklov;

constexpr double kPi = 3.14159265358979323846;

void BM_profile_evaluate(benchmark::State& state) {
    const Profile p = make_cylinder_profile(ProfileLabel::Conf1, 0.025, 1.0);
    double t = -0.99;
    for (auto _ : state) {
        benchmark::DoNotOptimize(p.evaluate(t));
        t += 1e-4;
        if (t > 0.99) t = -0.99;
    }
}
BENCHMARK(BM_profile_evaluate);

void BM_assemble_weights(benchmark::State& state) {
    const MetricFamily mf(MetricFamilyKind::Conformal, 2,
                          make_cylinder_profile(ProfileLabel::Conf1, 0.025, 1.0));
    Resolution res;
    res.refine = static_cast<int>(state.range(0));
    const Mesh1D mesh = Mesh1D::build(mf.profile, res);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_weights(mf, mesh));
    }
    state.SetComplexityN(static_cast<int64_t>(mesh.element_count()));
}
BENCHMARK(BM_assemble_weights)->Arg(1)->Arg(2)->Arg(4)->Complexity();

void BM_dtn_matrix(benchmark::State& state) {
    const MetricFamily mf(MetricFamilyKind::Conformal, 2,
                          make_cylinder_profile(ProfileLabel::Conf1, 0.025, 1.0));
    Resolution res;
    res.refine = static_cast<int>(state.range(0));
    const Mesh1D mesh = Mesh1D::build(mf.profile, res);
    const ElementWeights w = assemble_weights(mf, mesh);
    const ModeProblem mp(1.0, mf, -1.0, 1.0, EndpointCondition::Steklov,
                         EndpointCondition::Steklov);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dtn_matrix(mp, w));
    }
    state.SetComplexityN(static_cast<int64_t>(mesh.element_count()));
}
BENCHMARK(BM_dtn_matrix)->Arg(1)->Arg(2)->Arg(4)->Complexity();

void BM_neumann_eigenvalues(benchmark::State& state) {
    const MetricFamily mf(MetricFamilyKind::Conformal, 2,
                          make_identity_profile(0.5, 1.0));
    Resolution res;
    res.refine = static_cast<int>(state.range(0));
    const Mesh1D mesh = Mesh1D::build(mf.profile, res);
    const ModeProblem mp(1.0, mf, 0.5, 1.0, EndpointCondition::Neumann,
                         EndpointCondition::Neumann);
    for (auto _ : state) {
        benchmark::DoNotOptimize(neumann_eigenvalues(mp, mesh, 4));
    }
}
BENCHMARK(BM_neumann_eigenvalues)->Arg(1)->Arg(4);

void BM_steklov_spectrum(benchmark::State& state) {
    SpectrumRequest req{CrossSection::flat_torus({2 * kPi, 2 * kPi}),
                        MetricFamily(MetricFamilyKind::Conformal, 2,
                                     make_cylinder_profile(ProfileLabel::Conf1, 0.05, 1.0)),
                        1.0,
                        ProblemKind::SteklovTwoSided,
                        0.0,
                        static_cast<int>(state.range(0)),
                        Resolution{}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(steklov_spectrum(req));
    }
}
BENCHMARK(BM_steklov_spectrum)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_psi_bound(benchmark::State& state) {
    const auto cs = CrossSection::flat_torus({2 * kPi, 2 * kPi});
    const auto family = psi_family(cs, 1.0);
    const MetricFamily metric(MetricFamilyKind::Conformal, 2,
                              make_cylinder_profile(ProfileLabel::Conf1, 0.05, 1.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(minmax_upper_bound(family, metric, cs));
    }
}
BENCHMARK(BM_psi_bound);

void BM_grid_energy(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    auto grid = make_grid(uniform_axis(0.0, 2 * kPi, n), uniform_axis(0.0, 2 * kPi, n),
                          uniform_axis(-1.0, 1.0, n));
    GridFunction f = make_grid_function(grid);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        f.values[i] = std::sin(0.01 * static_cast<double>(i));
    for (auto _ : state) {
        benchmark::DoNotOptimize(grid_energy_product(f, f, nullptr));
    }
    state.SetComplexityN(static_cast<int64_t>(n * n * n));
}
BENCHMARK(BM_grid_energy)->Arg(16)->Arg(32)->Arg(64)->Complexity();

}  // namespace

BENCHMARK_MAIN();
