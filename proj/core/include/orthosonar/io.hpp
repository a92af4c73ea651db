#pragma once

#include <string>
#include <vector>

#include "orthosonar/pipeline.hpp"
#include "orthosonar/simulator.hpp"

namespace osr::io {

/// OSI image file: one JSON header line (intrinsics, orientation, dims,
/// endianness), a newline, then the row-major float32 little-endian
/// payload.
void write_osi(const std::string& path, const PolarImage& image);
PolarImage read_osi(const std::string& path);

/// ASCII PLY, float x y z, one vertex per point.
void write_ply(const std::string& path, const std::vector<CartesianPoint>& cloud);
std::vector<CartesianPoint> read_ply(const std::string& path);

void write_detections_csv(const std::string& path, const std::vector<Detection>& detections);
void write_matches_csv(const std::string& path, const std::vector<Detection>& h_detections,
                       const std::vector<Detection>& v_detections,
                       const std::vector<Match>& matches);

/// Scene document: primitives, noise, sonar rig, trajectory.
struct SceneFile {
    Scene scene;
    SonarRig rig;
    std::vector<RigidTransform> trajectory;
};
SceneFile load_scene(const std::string& path);

struct Manifest {
    struct Entry {
        std::string horizontal;
        std::string vertical;
        RigidTransform pose;
    };
    std::vector<Entry> entries;
    SonarExtrinsics extrinsics;
};
Manifest load_manifest(const std::string& path);
void save_manifest(const std::string& path, const Manifest& manifest);

/// Merges a JSON config file over the given defaults.
PipelineConfig load_config(const std::string& path, PipelineConfig defaults);

/// Writes content to a temp file and renames it into place.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace osr::io
