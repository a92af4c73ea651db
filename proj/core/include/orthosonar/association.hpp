#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "orthosonar/sonar_image.hpp"

namespace osr {

struct DbscanParams {
    double epsilon = 0.2;  // m, in (range, range*angle) feature space
    int min_samples = 5;   // neighborhood count, the point itself included

    void validate() const {
        if (!(epsilon > 0.0)) throw std::invalid_argument("DbscanParams: epsilon > 0");
        if (min_samples < 1) throw std::invalid_argument("DbscanParams: min_samples >= 1");
    }
};

struct Cluster {
    int label = 0;
    std::vector<int> members;  // indices into the detection vector, ascending
};

struct DbscanResult {
    std::vector<Cluster> clusters;
    std::vector<int> labels;  // per detection; -1 = noise
    std::vector<int> noise;   // indices of noise points
};

/// Density clustering over detections embedded as (range, range*angle) so
/// epsilon is a physical distance. Core points count themselves in their
/// epsilon-neighborhood; border points join the cluster of their
/// lowest-index core neighbor, which makes labeling deterministic.
DbscanResult dbscan(const std::vector<Detection>& detections, const DbscanParams& params);

struct ClusterDescriptor {
    double mean_range = 0.0;
    double range_variance = 0.0;  // population variance
    double r_min = 0.0;
    double r_max = 0.0;
};

ClusterDescriptor cluster_descriptor(const std::vector<Detection>& detections, const Cluster& c);

/// Pairs each h-cluster with the v-cluster of nearest descriptor (L2 in
/// raw meters); many-to-one is allowed, pairs with cost above `gate` are
/// dropped. Returns (h cluster index, v cluster index).
std::vector<std::pair<int, int>> associate_clusters(const std::vector<ClusterDescriptor>& h,
                                                    const std::vector<ClusterDescriptor>& v,
                                                    double gate);

/// Per-feature descriptor (range, intensity, and the two kernel means),
/// normalized to [0, 1]: intensities by the image min/max at this
/// timestep, range by max_range. For vertical images the two kernel means
/// are swapped, which realizes the orthogonal-axes pairing. The center
/// pixel is excluded from the kernel means; kernels clamp at borders.
struct FeatureDescriptor {
    double range = 0.0;
    double intensity = 0.0;
    double mean_a = 0.0;  // mu_x for horizontal images, mu_y for vertical
    double mean_b = 0.0;

    double distance(const FeatureDescriptor& o) const {
        const double dr = range - o.range;
        const double di = intensity - o.intensity;
        const double da = mean_a - o.mean_a;
        const double db = mean_b - o.mean_b;
        return std::sqrt(dr * dr + di * di + da * da + db * db);
    }
};

FeatureDescriptor feature_descriptor(const PolarImage& image, const Detection& d,
                                     int kernel_halfwidth);
FeatureDescriptor feature_descriptor(const PolarImage& image, const Detection& d,
                                     int kernel_halfwidth, float image_min, float image_max);

enum class MatchMode { brute, fast };

struct MatchParams {
    MatchMode mode = MatchMode::brute;
    double threshold = 0.1;  // accepted matches have cost strictly below this
    int sample_count = 10;   // fast mode candidates per h-feature
    int kernel_halfwidth = 2;
    std::uint64_t seed = 0;
    int threads = 1;

    void validate() const {
        if (!(threshold >= 0.0)) throw std::invalid_argument("MatchParams: threshold >= 0");
        if (sample_count < 1) throw std::invalid_argument("MatchParams: sample_count >= 1");
        if (kernel_halfwidth < 1) throw std::invalid_argument("MatchParams: kernel_halfwidth >= 1");
        if (threads < 1) throw std::invalid_argument("MatchParams: threads >= 1");
    }
};

struct Match {
    int h_index = 0;  // index into the horizontal detection vector
    int v_index = 0;  // index into the vertical detection vector
    double cost = 0.0;
};

/// Bijective feature association restricted to paired clusters.
///
/// Brute mode evaluates every cross pair, sorts globally by cost (ties by
/// raster indices) and accepts greedily while both endpoints are
/// unclaimed. Fast mode draws sample_count candidates per h-feature from
/// its paired v-cluster using a per-feature RNG substream and accepts the
/// cheapest unclaimed one. Both modes only accept costs strictly below
/// the threshold, and both are deterministic for any thread count.
std::vector<Match> associate_features(const PolarImage& h_image,
                                      const std::vector<Detection>& h_detections,
                                      const PolarImage& v_image,
                                      const std::vector<Detection>& v_detections,
                                      const std::vector<Cluster>& h_clusters,
                                      const std::vector<Cluster>& v_clusters,
                                      const std::vector<std::pair<int, int>>& cluster_pairs,
                                      const MatchParams& params);

}  // namespace osr
