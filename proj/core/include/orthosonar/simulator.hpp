#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "orthosonar/geometry.hpp"
#include "orthosonar/sonar_image.hpp"

namespace osr {

struct ScenePrimitive {
    enum class Kind { cylinder, box };
    Kind kind = Kind::cylinder;
    // cylinder: radius + height (axis along local z, centered on the pose)
    double radius = 0.1;
    double height = 1.0;
    // box: full extents along local x/y/z, centered on the pose
    Eigen::Vector3d size = Eigen::Vector3d(1.0, 1.0, 1.0);
    RigidTransform pose;  // local -> world
    double reflectivity = 1.0;

    void validate() const;
    double surface_area() const;
    bool contains(const CartesianPoint& world_point) const;
};

struct NoiseModel {
    double background_mean = 0.0;     // exponential mean, additive
    double speckle_variance = 0.0;    // multiplicative, unit mean
    std::uint64_t seed = 0;
};

struct Scene {
    std::vector<ScenePrimitive> primitives;
    NoiseModel noise;
};

/// Sonar rig description: the horizontal sonar sits at the robot origin;
/// the vertical one is mounted `vertical_offset` meters above it, rolled
/// 90 degrees about the forward axis so its swept plane is x-z.
struct SonarRig {
    SonarIntrinsics horizontal;
    SonarIntrinsics vertical;
    double vertical_offset = 0.10;  // m, +z
    int rays_per_beam = 128;        // samples across the unmeasured aperture
    bool ghost_echo = false;        // scaled copy at 2x range, factor 0.3

    SonarExtrinsics extrinsics() const {
        return SonarExtrinsics::from_vertical_offset(vertical_offset);
    }
};

struct FramePair {
    PolarImage horizontal;
    PolarImage vertical;
    RigidTransform pose;  // robot frame -> world
};

/// First-return ray-cast rendering of both sonars at the given robot
/// pose. Each surface hit deposits reflectivity * |cos(incidence)| into
/// its (range bin, beam) cell, max-combined across rays; noise is applied
/// afterwards from per-beam RNG substreams. Throws if the robot sits
/// inside a primitive.
FramePair render_pair(const Scene& scene, const SonarRig& rig, const RigidTransform& robot_pose,
                      std::uint64_t frame_index = 0);

/// Uniform surface sampling of all primitives, `density` points per m^2.
std::vector<CartesianPoint> ground_truth_cloud(const Scene& scene, double density,
                                               std::uint64_t seed = 0);

/// Nearest ray hit against a single primitive; used by rendering and by
/// tests that probe individual rays. Returns distance along the ray and
/// the unit surface normal at the hit, in world coordinates.
struct RayHit {
    double distance;
    Eigen::Vector3d normal;
};
std::optional<RayHit> intersect_primitive(const ScenePrimitive& prim,
                                          const CartesianPoint& origin,
                                          const Eigen::Vector3d& direction);

}  // namespace osr
