#include "orthosonar/pipeline.hpp"

#include <cmath>
#include <numeric>

namespace osr {

namespace {

Cluster all_inclusive_cluster(std::size_t n) {
    Cluster c;
    c.label = 0;
    c.members.resize(n);
    std::iota(c.members.begin(), c.members.end(), 0);
    return c;
}

}  // namespace

FrameReconstruction reconstruct_frame_detailed(const FramePair& frame,
                                               const PipelineConfig& config) {
    config.validate();
    FrameReconstruction out;
    const SonarIntrinsics& hi = frame.horizontal.intrinsics();
    const SonarIntrinsics& vi = frame.vertical.intrinsics();

    out.h_detections = cfar_detect(frame.horizontal, config.cfar,
                                   [&](int j) { return overlap_pass(j, hi, vi); });
    out.v_detections = cfar_detect(frame.vertical, config.cfar,
                                   [&](int j) { return overlap_pass(j, vi, hi); });
    for (auto& d : out.v_detections) d = compensate_extrinsics(d, config.extrinsics);
    if (out.h_detections.empty() || out.v_detections.empty()) return out;

    std::vector<Cluster> h_clusters, v_clusters;
    std::vector<std::pair<int, int>> pairs;
    if (config.clustering_enabled) {
        h_clusters = dbscan(out.h_detections, config.dbscan).clusters;
        v_clusters = dbscan(out.v_detections, config.dbscan).clusters;
        std::vector<ClusterDescriptor> h_desc, v_desc;
        h_desc.reserve(h_clusters.size());
        v_desc.reserve(v_clusters.size());
        for (const auto& c : h_clusters) h_desc.push_back(cluster_descriptor(out.h_detections, c));
        for (const auto& c : v_clusters) v_desc.push_back(cluster_descriptor(out.v_detections, c));
        pairs = associate_clusters(h_desc, v_desc, config.cluster_gate);
    } else {
        h_clusters.push_back(all_inclusive_cluster(out.h_detections.size()));
        v_clusters.push_back(all_inclusive_cluster(out.v_detections.size()));
        pairs.emplace_back(0, 0);
    }

    out.matches = associate_features(frame.horizontal, out.h_detections, frame.vertical,
                                     out.v_detections, h_clusters, v_clusters, pairs,
                                     config.match_params());

    // Fuse; keep only points inside both overlap gates.
    const double bearing_gate = 0.5 * vi.vertical_aperture;
    const double elevation_gate = 0.5 * hi.vertical_aperture;
    std::vector<Match> kept;
    for (const auto& m : out.matches) {
        const SphericalPoint fused =
            fuse_match(out.h_detections[m.h_index], out.v_detections[m.v_index]);
        if (std::abs(fused.bearing) > bearing_gate || std::abs(fused.elevation) > elevation_gate)
            continue;
        kept.push_back(m);
        out.points.push_back(spherical_to_cartesian(fused));
    }
    out.matches = std::move(kept);
    return out;
}

std::vector<CartesianPoint> reconstruct_frame(const FramePair& frame,
                                              const PipelineConfig& config) {
    return reconstruct_frame_detailed(frame, config).points;
}

std::vector<CartesianPoint> accumulate_map(const std::vector<FramePair>& frames,
                                           const PipelineConfig& config) {
    std::vector<CartesianPoint> map;
    for (const auto& f : frames) {
        const auto cloud = transform_to_world(reconstruct_frame(f, config), f.pose);
        map.insert(map.end(), cloud.begin(), cloud.end());
    }
    return map;
}

}  // namespace osr
