#include <random>

#include <benchmark/benchmark.h>

#include "needletkit/needletkit.hpp"

using namespace needletkit;

namespace {

EquirectMap make_map(int H, int W) {
    EquirectMap map(H, W);
    const auto geom = equirect_geometry(H, W);
    const SphDir src(kPi / 2, 1.0);
    for (std::size_t i = 0; i < geom.size(); ++i) {
        const double d = geodesic_distance(geom[i].first, src);
        const double v = 0.05 + 6.0 * std::exp(-20.0 * d * d);
        for (int ch = 0; ch < 3; ++ch) map.data[ch][i] = v * (1.0 + 0.1 * ch);
    }
    return map;
}

void bm_frame_build(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(NeedletFrame::build(2.0, 3, CubatureScheme::PaperMatching));
}
BENCHMARK(bm_frame_build);

void bm_sht_forward(benchmark::State& state) {
    const int lmax = static_cast<int>(state.range(0));
    const QuadGrid grid = gauss_product_grid(lmax);
    std::vector<double> vals(grid.dirs.size(), 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(sht_forward(grid.dirs, grid.weights, {vals, vals, vals}, lmax));
}
BENCHMARK(bm_sht_forward)->Arg(8)->Arg(16)->Arg(32);

void bm_analyze(benchmark::State& state) {
    const NeedletFrame frame = NeedletFrame::build(2.0, 3, CubatureScheme::PaperMatching);
    const EquirectMap map = make_map(64, 128);
    for (auto _ : state) benchmark::DoNotOptimize(analyze(map, frame));
}
BENCHMARK(bm_analyze);

void bm_synthesize(benchmark::State& state) {
    const NeedletFrame frame = NeedletFrame::build(2.0, 3, CubatureScheme::PaperMatching);
    const NeedletCoeffs coeffs = analyze(make_map(64, 128), frame);
    for (auto _ : state) benchmark::DoNotOptimize(synthesize(coeffs, frame, 64, 128));
}
BENCHMARK(bm_synthesize);

void bm_sinkhorn(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> uz(-1.0, 1.0), up(0.0, kTwoPi), um(0.1, 2.0);
    std::vector<SphDir> pts;
    Eigen::VectorXd a(n), b(n);
    for (int i = 0; i < n; ++i) {
        pts.emplace_back(std::acos(uz(gen)), up(gen));
        a[i] = um(gen);
        b[i] = um(gen);
    }
    const Eigen::MatrixXd C = cost_matrix(pts, pts);
    TransportConfig cfg;
    cfg.max_iter = 2000;
    cfg.tol = 1e-6;
    for (auto _ : state) benchmark::DoNotOptimize(sinkhorn_uot(a, b, C, cfg));
}
BENCHMARK(bm_sinkhorn)->Arg(12)->Arg(48)->Arg(192);

void bm_stl(benchmark::State& state) {
    const NeedletFrame frame = NeedletFrame::build(2.0, 1, CubatureScheme::PaperMatching);
    const NeedletCoeffs gt = analyze(make_map(48, 96), frame);
    NeedletCoeffs pred = NeedletCoeffs::zeros_like(frame);
    pred.dc = gt.dc;
    TransportConfig cfg;
    cfg.max_iter = 5000;
    cfg.tol = 1e-7;
    for (auto _ : state) benchmark::DoNotOptimize(stl(pred, gt, frame, cfg));
}
BENCHMARK(bm_stl);

void bm_std_metric(benchmark::State& state) {
    const EquirectMap a = make_map(48, 96);
    const EquirectMap b = make_map(48, 96);
    TransportConfig cfg;
    cfg.max_iter = 5000;
    cfg.tol = 1e-7;
    for (auto _ : state)
        benchmark::DoNotOptimize(std_metric(a, b, static_cast<int>(state.range(0)), cfg));
}
BENCHMARK(bm_std_metric)->Arg(48)->Arg(192);

} // namespace

BENCHMARK_MAIN();
