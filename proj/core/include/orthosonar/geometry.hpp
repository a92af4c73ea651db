#pragma once

#include <Eigen/Dense>
#include <vector>

#include "orthosonar/sonar_image.hpp"

namespace osr {

using CartesianPoint = Eigen::Vector3d;

/// Spherical sonar coordinates. Bearing is measured in the x-y plane from
/// +x toward +y; elevation from the x-y plane toward +z. At the poles
/// (|elevation| = pi/2) bearing is defined as 0.
struct SphericalPoint {
    double range = 0.0;      // m, >= 0
    double bearing = 0.0;    // rad, [-pi, pi)
    double elevation = 0.0;  // rad, [-pi, pi)
};

struct RigidTransform {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    bool is_valid(double tol = 1e-9) const {
        const Eigen::Matrix3d err = rotation.transpose() * rotation - Eigen::Matrix3d::Identity();
        return err.cwiseAbs().maxCoeff() <= tol && std::abs(rotation.determinant() - 1.0) <= tol;
    }

    CartesianPoint apply(const CartesianPoint& p) const { return rotation * p + translation; }

    RigidTransform inverse() const {
        RigidTransform out;
        out.rotation = rotation.transpose();
        out.translation = -(rotation.transpose() * translation);
        return out;
    }

    RigidTransform compose(const RigidTransform& rhs) const {
        RigidTransform out;
        out.rotation = rotation * rhs.rotation;
        out.translation = rotation * rhs.translation + translation;
        return out;
    }

    static RigidTransform identity() { return {}; }
};

/// Vertical-sonar to horizontal-sonar compensation transform. It acts in
/// the lifted frame where the vertical sonar's swept angle plays the role
/// of bearing and the unmeasured angle is taken as zero; the 90-degree
/// mounting roll is absorbed by that reinterpretation. For a vertical
/// sonar mounted `dz` meters above the horizontal one the compensation is
/// a pure translation (0, dz, 0) in the lifted frame.
struct SonarExtrinsics {
    RigidTransform transform_v_to_h;

    static SonarExtrinsics from_vertical_offset(double dz) {
        SonarExtrinsics e;
        e.transform_v_to_h.translation = Eigen::Vector3d(0.0, dz, 0.0);
        return e;
    }

    static SonarExtrinsics default_mount() { return from_vertical_offset(0.10); }
};

CartesianPoint spherical_to_cartesian(const SphericalPoint& p);

/// Inverse of spherical_to_cartesian; throws on zero-norm input.
SphericalPoint cartesian_to_spherical(const CartesianPoint& p);

/// Lifts a vertical-frame detection with unmeasured angle zero, applies
/// the extrinsic transform, and converts back; intensity and raster
/// indices are unchanged.
Detection compensate_extrinsics(const Detection& d, const SonarExtrinsics& e);

/// Eq-style fusion: mean of the two ranges, bearing from the horizontal
/// detection, elevation from the compensated vertical one.
SphericalPoint fuse_match(const Detection& z_h, const Detection& z_v);

std::vector<CartesianPoint> transform_to_world(const std::vector<CartesianPoint>& cloud,
                                               const RigidTransform& pose);

}  // namespace osr
