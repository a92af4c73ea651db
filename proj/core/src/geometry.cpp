#include "orthosonar/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace osr {

CartesianPoint spherical_to_cartesian(const SphericalPoint& p) {
    const double ce = std::cos(p.elevation);
    return {p.range * ce * std::cos(p.bearing),
            p.range * ce * std::sin(p.bearing),
            p.range * std::sin(p.elevation)};
}

SphericalPoint cartesian_to_spherical(const CartesianPoint& p) {
    const double r = p.norm();
    if (r == 0.0) throw std::invalid_argument("cartesian_to_spherical: degenerate point");
    SphericalPoint out;
    out.range = r;
    out.elevation = std::asin(std::clamp(p.z() / r, -1.0, 1.0));
    out.bearing = (p.x() == 0.0 && p.y() == 0.0) ? 0.0 : std::atan2(p.y(), p.x());
    return out;
}

Detection compensate_extrinsics(const Detection& d, const SonarExtrinsics& e) {
    const CartesianPoint lifted = spherical_to_cartesian({d.range, d.angle, 0.0});
    const CartesianPoint moved = e.transform_v_to_h.apply(lifted);
    const SphericalPoint s = cartesian_to_spherical(moved);
    Detection out = d;
    out.range = s.range;
    out.angle = s.bearing;
    return out;
}

SphericalPoint fuse_match(const Detection& z_h, const Detection& z_v) {
    return {0.5 * (z_h.range + z_v.range), z_h.angle, z_v.angle};
}

std::vector<CartesianPoint> transform_to_world(const std::vector<CartesianPoint>& cloud,
                                               const RigidTransform& pose) {
    std::vector<CartesianPoint> out;
    out.reserve(cloud.size());
    for (const auto& p : cloud) out.push_back(pose.apply(p));
    return out;
}

}  // namespace osr
