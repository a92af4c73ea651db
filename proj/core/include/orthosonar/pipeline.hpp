#pragma once

#include "orthosonar/association.hpp"
#include "orthosonar/cfar.hpp"
#include "orthosonar/geometry.hpp"
#include "orthosonar/simulator.hpp"

namespace osr {

struct PipelineConfig {
    CfarParams cfar;
    DbscanParams dbscan;
    MatchMode mode = MatchMode::brute;
    double match_threshold = 0.1;
    int sample_count = 10;
    int kernel_halfwidth = 2;
    double cluster_gate = 1.0;  // m
    bool clustering_enabled = true;
    SonarExtrinsics extrinsics = SonarExtrinsics::default_mount();
    std::uint64_t seed = 0;
    int threads = 1;

    void validate() const {
        cfar.validate();
        dbscan.validate();
        match_params().validate();
        if (!(cluster_gate > 0.0)) throw std::invalid_argument("PipelineConfig: cluster_gate > 0");
    }

    MatchParams match_params() const {
        return {mode, match_threshold, sample_count, kernel_halfwidth, seed, threads};
    }
};

struct FrameReconstruction {
    std::vector<CartesianPoint> points;  // robot frame, one per match
    std::vector<Detection> h_detections;
    std::vector<Detection> v_detections;  // extrinsics-compensated
    std::vector<Match> matches;
};

/// Per-frame pipeline: CFAR detection under the mutual overlap gate,
/// extrinsic compensation of the vertical detections, clustering and
/// cluster association (or one all-inclusive cluster pair when clustering
/// is disabled), bijective feature matching, then fusion to 3D.
FrameReconstruction reconstruct_frame_detailed(const FramePair& frame,
                                               const PipelineConfig& config);

std::vector<CartesianPoint> reconstruct_frame(const FramePair& frame,
                                              const PipelineConfig& config);

/// Union of per-frame clouds mapped into the world frame by the supplied
/// poses.
std::vector<CartesianPoint> accumulate_map(const std::vector<FramePair>& frames,
                                           const PipelineConfig& config);

}  // namespace osr
