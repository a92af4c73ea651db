#pragma once

#include "orthosonar/simulator.hpp"

namespace osr {

struct MetricReport {
    double mae = 0.0;   // m
    double rmse = 0.0;  // m
    std::size_t point_count = 0;
    double inlier_fraction = 0.0;  // residual <= inlier_cap
};

/// Exact unsigned distance from a world point to the nearest primitive
/// surface (analytic for cylinder and box).
double surface_distance(const Scene& scene, const CartesianPoint& p);

/// MAE / RMSE of a cloud against the scene's analytic surfaces. Throws on
/// an empty cloud.
MetricReport evaluate(const std::vector<CartesianPoint>& cloud, const Scene& scene,
                      double inlier_cap = 0.10);

}  // namespace osr
