#include <benchmark/benchmark.h>

#include <random>

#include "orthosonar/association.hpp"

namespace {

struct Fixture {
    osr::PolarImage h_image;
    osr::PolarImage v_image;
    std::vector<osr::Detection> h_dets, v_dets;
    std::vector<osr::Cluster> h_clusters, v_clusters;
    std::vector<std::pair<int, int>> pairs{{0, 0}};
};

Fixture make_fixture(int n_per_side) {
    osr::SonarIntrinsics k;
    k.min_range = 2.5;
    k.max_range = 7.5;
    Fixture f{osr::PolarImage(k, osr::Orientation::horizontal),
              osr::PolarImage(k, osr::Orientation::vertical)};
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> bin(20, k.num_range_bins - 21);
    std::uniform_int_distribution<int> beam(20, k.num_beams - 21);
    std::uniform_real_distribution<double> inten(0.1, 1.0);
    osr::Cluster ch, cv;
    for (int i = 0; i < n_per_side; ++i) {
        osr::Detection d{bin(rng), beam(rng), 0, 0, inten(rng)};
        std::tie(d.range, d.angle) = osr::bin_to_polar(d.range_bin, d.beam, k);
        f.h_image.at(d.range_bin, d.beam) = static_cast<float>(d.intensity);
        f.h_dets.push_back(d);
        ch.members.push_back(i);
        osr::Detection e{bin(rng), beam(rng), 0, 0, inten(rng)};
        std::tie(e.range, e.angle) = osr::bin_to_polar(e.range_bin, e.beam, k);
        f.v_image.at(e.range_bin, e.beam) = static_cast<float>(e.intensity);
        f.v_dets.push_back(e);
        cv.members.push_back(i);
    }
    f.h_clusters.push_back(ch);
    f.v_clusters.push_back(cv);
    return f;
}

void BM_AssociateFeatures(benchmark::State& state) {
    const auto f = make_fixture(static_cast<int>(state.range(0)));
    osr::MatchParams params;
    params.mode = state.range(1) ? osr::MatchMode::fast : osr::MatchMode::brute;
    params.threshold = 0.5;
    for (auto _ : state) {
        auto matches = osr::associate_features(f.h_image, f.h_dets, f.v_image, f.v_dets,
                                               f.h_clusters, f.v_clusters, f.pairs, params);
        benchmark::DoNotOptimize(matches);
    }
}

}  // namespace

BENCHMARK(BM_AssociateFeatures)
    ->Args({200, 0})
    ->Args({200, 1})
    ->Args({800, 0})
    ->Args({800, 1});
