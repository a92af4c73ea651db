#include <benchmark/benchmark.h>

#include <random>

#include "orthosonar/cfar.hpp"

namespace {

osr::PolarImage noise_image(int rows, int cols) {
    osr::SonarIntrinsics k;
    k.min_range = 0.0;
    k.max_range = 10.0;
    k.num_range_bins = rows;
    k.num_beams = cols;
    osr::PolarImage image(k, osr::Orientation::horizontal);
    std::mt19937_64 rng(7);
    std::exponential_distribution<double> exp(1.0);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) image.at(i, j) = static_cast<float>(exp(rng));
    return image;
}

void BM_CfarDetect(benchmark::State& state) {
    const auto image = noise_image(512, 256);
    osr::CfarParams params;
    params.train_cells_per_axis = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto dets = osr::cfar_detect(image, params);
        benchmark::DoNotOptimize(dets);
    }
}

}  // namespace

BENCHMARK(BM_CfarDetect)->Arg(4)->Arg(8)->Arg(16);
