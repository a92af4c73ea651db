#include "orthosonar/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace osr {

namespace {

double cylinder_surface_distance(const ScenePrimitive& prim, const Eigen::Vector3d& p) {
    // Signed distance of a capped cylinder; its magnitude is the exact
    // distance to the surface.
    const double dr = std::hypot(p.x(), p.y()) - prim.radius;
    const double dz = std::abs(p.z()) - 0.5 * prim.height;
    const double outside = std::hypot(std::max(dr, 0.0), std::max(dz, 0.0));
    const double inside = std::min(std::max(dr, dz), 0.0);
    return std::abs(outside + inside);
}

double box_surface_distance(const ScenePrimitive& prim, const Eigen::Vector3d& p) {
    const Eigen::Vector3d q = p.cwiseAbs() - 0.5 * prim.size;
    const double outside = q.cwiseMax(0.0).norm();
    const double inside = std::min(q.maxCoeff(), 0.0);
    return std::abs(outside + inside);
}

}  // namespace

double surface_distance(const Scene& scene, const CartesianPoint& p) {
    if (scene.primitives.empty())
        throw std::invalid_argument("surface_distance: empty scene");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& prim : scene.primitives) {
        const Eigen::Vector3d local = prim.pose.inverse().apply(p);
        const double d = prim.kind == ScenePrimitive::Kind::cylinder
                             ? cylinder_surface_distance(prim, local)
                             : box_surface_distance(prim, local);
        best = std::min(best, d);
    }
    return best;
}

MetricReport evaluate(const std::vector<CartesianPoint>& cloud, const Scene& scene,
                      double inlier_cap) {
    if (cloud.empty()) throw std::invalid_argument("evaluate: no points to evaluate");
    MetricReport r;
    r.point_count = cloud.size();
    double sum_abs = 0.0, sum_sq = 0.0;
    std::size_t inliers = 0;
    for (const auto& p : cloud) {
        const double d = surface_distance(scene, p);
        sum_abs += d;
        sum_sq += d * d;
        if (d <= inlier_cap) ++inliers;
    }
    r.mae = sum_abs / cloud.size();
    r.rmse = std::sqrt(sum_sq / cloud.size());
    r.inlier_fraction = static_cast<double>(inliers) / cloud.size();
    return r;
}

}  // namespace osr
