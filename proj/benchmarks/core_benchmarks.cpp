#include <benchmark/benchmark.h>

#include "fpls/basis.hpp"
#include "fpls/model_select.hpp"
#include "fpls/pls.hpp"
#include "fpls/simulation.hpp"
#include "fpls/variation.hpp"

namespace {

fpls::CurveDataset simulated(int subjects, std::uint64_t seed) {
    fpls::sim::SimConfig config;
    config.subjects = subjects;
    config.train_subjects = subjects;
    config.test_subjects = 0;
    config.seed = seed;
    return fpls::sim::generate(config);
}

void BM_BuildBasis(benchmark::State& state) {
    const int knots = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const auto basis = fpls::BasisSystem::build(3, knots, 0.0, 1.0, 2);
        benchmark::DoNotOptimize(basis.gram());
    }
}
BENCHMARK(BM_BuildBasis)->Arg(15)->Arg(25)->Arg(50);

void BM_RegressionSplines(benchmark::State& state) {
    const auto ds = simulated(static_cast<int>(state.range(0)), 1);
    const auto basis = fpls::BasisSystem::build(3, 15, 0.0, 1.0, 2);
    for (auto _ : state) {
        const auto coefs = fpls::fit_regression_splines(basis, ds);
        benchmark::DoNotOptimize(coefs.values);
    }
}
BENCHMARK(BM_RegressionSplines)->Arg(10)->Arg(40);

void BM_SplitVariation(benchmark::State& state) {
    const auto ds = simulated(40, 2);
    const auto raw = fpls::raw_value_matrix(ds);
    for (auto _ : state) {
        const auto s = fpls::split_variation(raw.values, 40, 3);
        benchmark::DoNotOptimize(s.within);
    }
}
BENCHMARK(BM_SplitVariation);

void BM_PlsFit(benchmark::State& state) {
    const auto ds = simulated(30, 3);
    const auto basis = fpls::BasisSystem::build(3, 15, 0.0, 1.0, 2);
    const auto coefs = fpls::fit_regression_splines(basis, ds);
    const auto sv = fpls::split_variation(coefs.values, 30, 3);
    const auto tr = fpls::make_transform(basis, fpls::Variant::penalized, 2.87);
    const auto features = tr.apply(sv.within);
    const int q = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const auto model = fpls::PlsModel::fit(features, coefs.dummy, q);
        benchmark::DoNotOptimize(model.scores());
    }
}
BENCHMARK(BM_PlsFit)->Arg(2)->Arg(10);

void BM_SubjectCv(benchmark::State& state) {
    const auto ds = simulated(20, 4);
    const auto basis = fpls::BasisSystem::build(3, 15, 0.0, 1.0, 2);
    const auto coefs = fpls::fit_regression_splines(basis, ds);
    fpls::CvGrid grid;
    grid.lambdas = {0.0, 0.41, 2.87};
    grid.q_values = {1, 2, 3, 4, 5};
    for (auto _ : state) {
        const auto cv = fpls::cross_validate(coefs, &basis, fpls::Variant::penalized, grid,
                                             fpls::FoldScheme::subject, 1);
        benchmark::DoNotOptimize(cv.best_ccr);
    }
}
BENCHMARK(BM_SubjectCv);

void BM_GenerateDataset(benchmark::State& state) {
    fpls::sim::SimConfig config;
    config.seed = 5;
    for (auto _ : state) {
        const auto ds = fpls::sim::generate(config);
        benchmark::DoNotOptimize(ds.curve_count());
    }
}
BENCHMARK(BM_GenerateDataset);

}  // namespace

BENCHMARK_MAIN();
