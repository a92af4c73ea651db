#include "orthosonar/simulator.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace osr {

namespace {

constexpr double kPi = 3.14159265358979323846;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::optional<RayHit> intersect_cylinder_local(const ScenePrimitive& prim,
                                               const Eigen::Vector3d& o,
                                               const Eigen::Vector3d& d) {
    const double r = prim.radius;
    const double hz = 0.5 * prim.height;
    double best = std::numeric_limits<double>::infinity();
    Eigen::Vector3d normal = Eigen::Vector3d::Zero();

    // Lateral surface.
    const double a = d.x() * d.x() + d.y() * d.y();
    if (a > 0.0) {
        const double b = 2.0 * (o.x() * d.x() + o.y() * d.y());
        const double c = o.x() * o.x() + o.y() * o.y() - r * r;
        const double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            for (double t : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
                if (t <= 1e-9 || t >= best) continue;
                const Eigen::Vector3d p = o + t * d;
                if (std::abs(p.z()) <= hz) {
                    best = t;
                    normal = Eigen::Vector3d(p.x(), p.y(), 0.0).normalized();
                }
            }
        }
    }
    // Caps.
    if (d.z() != 0.0) {
        for (double zc : {-hz, hz}) {
            const double t = (zc - o.z()) / d.z();
            if (t <= 1e-9 || t >= best) continue;
            const Eigen::Vector3d p = o + t * d;
            if (p.x() * p.x() + p.y() * p.y() <= r * r) {
                best = t;
                normal = Eigen::Vector3d(0.0, 0.0, zc > 0 ? 1.0 : -1.0);
            }
        }
    }
    if (!std::isfinite(best)) return std::nullopt;
    return RayHit{best, normal};
}

std::optional<RayHit> intersect_box_local(const ScenePrimitive& prim, const Eigen::Vector3d& o,
                                          const Eigen::Vector3d& d) {
    const Eigen::Vector3d half = 0.5 * prim.size;
    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();
    int entry_axis = -1;
    for (int ax = 0; ax < 3; ++ax) {
        if (d[ax] == 0.0) {
            if (std::abs(o[ax]) > half[ax]) return std::nullopt;
            continue;
        }
        double ta = (-half[ax] - o[ax]) / d[ax];
        double tb = (half[ax] - o[ax]) / d[ax];
        if (ta > tb) std::swap(ta, tb);
        if (ta > t0) {
            t0 = ta;
            entry_axis = ax;
        }
        t1 = std::min(t1, tb);
        if (t0 > t1) return std::nullopt;
    }
    if (t0 <= 1e-9 || entry_axis < 0) return std::nullopt;
    Eigen::Vector3d normal = Eigen::Vector3d::Zero();
    normal[entry_axis] = d[entry_axis] > 0 ? -1.0 : 1.0;
    return RayHit{t0, normal};
}

}  // namespace

void ScenePrimitive::validate() const {
    if (kind == Kind::cylinder) {
        if (!(radius > 0.0 && height > 0.0))
            throw std::invalid_argument("ScenePrimitive: cylinder dims must be positive");
    } else {
        if (!(size.minCoeff() > 0.0))
            throw std::invalid_argument("ScenePrimitive: box dims must be positive");
    }
    if (!(reflectivity >= 0.0 && reflectivity <= 1.0))
        throw std::invalid_argument("ScenePrimitive: reflectivity in [0,1]");
    if (!pose.is_valid(1e-9)) throw std::invalid_argument("ScenePrimitive: invalid pose");
}

double ScenePrimitive::surface_area() const {
    if (kind == Kind::cylinder) return 2.0 * kPi * radius * height + 2.0 * kPi * radius * radius;
    const double w = size.x(), d = size.y(), h = size.z();
    return 2.0 * (w * d + w * h + d * h);
}

bool ScenePrimitive::contains(const CartesianPoint& world_point) const {
    const Eigen::Vector3d p = pose.inverse().apply(world_point);
    if (kind == Kind::cylinder)
        return std::abs(p.z()) <= 0.5 * height && p.x() * p.x() + p.y() * p.y() <= radius * radius;
    return (p.cwiseAbs() - 0.5 * size).maxCoeff() <= 0.0;
}

std::optional<RayHit> intersect_primitive(const ScenePrimitive& prim, const CartesianPoint& origin,
                                          const Eigen::Vector3d& direction) {
    const RigidTransform inv = prim.pose.inverse();
    const Eigen::Vector3d o = inv.apply(origin);
    const Eigen::Vector3d d = inv.rotation * direction;
    auto hit = prim.kind == ScenePrimitive::Kind::cylinder ? intersect_cylinder_local(prim, o, d)
                                                           : intersect_box_local(prim, o, d);
    if (hit) hit->normal = prim.pose.rotation * hit->normal;
    return hit;
}

namespace {

void render_sonar(const Scene& scene, const SonarIntrinsics& intr,
                  const RigidTransform& world_T_sonar, int rays_per_beam, bool ghost_echo,
                  PolarImage& image) {
    const double bin_w = intr.range_bin_width();
    const Eigen::Vector3d origin = world_T_sonar.translation;

    for (const auto& prim : scene.primitives) {
        prim.validate();
        if (prim.contains(origin))
            throw std::runtime_error("render_pair: degenerate scene, sonar inside a primitive");
    }

    const auto deposit = [&](double range, double value, int j) {
        const int bin = static_cast<int>(std::floor((range - intr.min_range) / bin_w));
        if (bin < 0 || bin >= intr.num_range_bins) return;
        float& cell = image.at(bin, j);
        cell = std::max(cell, static_cast<float>(value));
    };

    for (int j = 0; j < intr.num_beams; ++j) {
        const double bearing = -0.5 * intr.angular_aperture + (j + 0.5) * intr.beam_width();
        for (int k = 0; k < rays_per_beam; ++k) {
            const double elev =
                -0.5 * intr.vertical_aperture + (k + 0.5) * intr.vertical_aperture / rays_per_beam;
            const Eigen::Vector3d dir_local(std::cos(elev) * std::cos(bearing),
                                            std::cos(elev) * std::sin(bearing), std::sin(elev));
            const Eigen::Vector3d dir = world_T_sonar.rotation * dir_local;

            double best = std::numeric_limits<double>::infinity();
            double refl = 0.0;
            Eigen::Vector3d normal;
            for (const auto& prim : scene.primitives) {
                const auto hit = intersect_primitive(prim, origin, dir);
                if (hit && hit->distance < best) {
                    best = hit->distance;
                    refl = prim.reflectivity;
                    normal = hit->normal;
                }
            }
            if (!std::isfinite(best)) continue;
            const double value = refl * std::abs(dir.dot(normal));
            deposit(best, value, j);
            if (ghost_echo) deposit(2.0 * best, 0.3 * value, j);
        }
    }
}

void apply_noise(PolarImage& image, const NoiseModel& noise, std::uint64_t stream) {
    if (noise.background_mean <= 0.0 && noise.speckle_variance <= 0.0) return;
    for (int j = 0; j < image.cols(); ++j) {
        std::mt19937_64 rng(splitmix64(noise.seed ^ splitmix64(stream ^ (j + 1))));
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::gamma_distribution<double> gamma(
            noise.speckle_variance > 0.0 ? 1.0 / noise.speckle_variance : 1.0,
            noise.speckle_variance);
        for (int i = 0; i < image.rows(); ++i) {
            double v = image.at(i, j);
            if (noise.speckle_variance > 0.0 && v > 0.0) v *= gamma(rng);
            if (noise.background_mean > 0.0)
                v += -noise.background_mean * std::log1p(-uni(rng));
            image.at(i, j) = static_cast<float>(v);
        }
    }
}

}  // namespace

FramePair render_pair(const Scene& scene, const SonarRig& rig, const RigidTransform& robot_pose,
                      std::uint64_t frame_index) {
    rig.horizontal.validate();
    rig.vertical.validate();
    if (rig.rays_per_beam < 64)
        throw std::invalid_argument("render_pair: need >= 64 rays per beam");

    PolarImage h(rig.horizontal, Orientation::horizontal);
    PolarImage v(rig.vertical, Orientation::vertical);

    render_sonar(scene, rig.horizontal, robot_pose, rig.rays_per_beam, rig.ghost_echo, h);

    // Vertical mount: 90 degree roll about +x, offset up.
    RigidTransform mount;
    mount.rotation << 1, 0, 0, 0, 0, -1, 0, 1, 0;
    mount.translation = Eigen::Vector3d(0.0, 0.0, rig.vertical_offset);
    render_sonar(scene, rig.vertical, robot_pose.compose(mount), rig.rays_per_beam,
                 rig.ghost_echo, v);

    apply_noise(h, scene.noise, splitmix64(frame_index * 2 + 1));
    apply_noise(v, scene.noise, splitmix64(frame_index * 2 + 2));
    return {std::move(h), std::move(v), robot_pose};
}

std::vector<CartesianPoint> ground_truth_cloud(const Scene& scene, double density,
                                               std::uint64_t seed) {
    if (!(density > 0.0)) throw std::invalid_argument("ground_truth_cloud: density > 0");
    std::vector<CartesianPoint> out;
    std::mt19937_64 rng(splitmix64(seed ^ 0xA5A5A5A5ULL));
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    for (const auto& prim : scene.primitives) {
        prim.validate();
        const std::size_t count =
            static_cast<std::size_t>(std::llround(prim.surface_area() * density));
        if (prim.kind == ScenePrimitive::Kind::cylinder) {
            const double lat = 2.0 * kPi * prim.radius * prim.height;
            const double cap = kPi * prim.radius * prim.radius;
            const double total = lat + 2.0 * cap;
            for (std::size_t s = 0; s < count; ++s) {
                Eigen::Vector3d p;
                const double pick = uni(rng) * total;
                if (pick < lat) {
                    const double a = 2.0 * kPi * uni(rng);
                    const double z = (uni(rng) - 0.5) * prim.height;
                    p = {prim.radius * std::cos(a), prim.radius * std::sin(a), z};
                } else {
                    const double rr = prim.radius * std::sqrt(uni(rng));
                    const double a = 2.0 * kPi * uni(rng);
                    const double z = pick < lat + cap ? -0.5 * prim.height : 0.5 * prim.height;
                    p = {rr * std::cos(a), rr * std::sin(a), z};
                }
                out.push_back(prim.pose.apply(p));
            }
        } else {
            const Eigen::Vector3d half = 0.5 * prim.size;
            const double areas[3] = {prim.size.y() * prim.size.z(), prim.size.x() * prim.size.z(),
                                     prim.size.x() * prim.size.y()};
            const double total = 2.0 * (areas[0] + areas[1] + areas[2]);
            for (std::size_t s = 0; s < count; ++s) {
                double pick = uni(rng) * total;
                int axis = 0;
                double sign = 1.0;
                for (int ax = 0; ax < 3; ++ax) {
                    if (pick < areas[ax]) { axis = ax; sign = -1.0; break; }
                    pick -= areas[ax];
                    if (pick < areas[ax]) { axis = ax; sign = 1.0; break; }
                    pick -= areas[ax];
                }
                Eigen::Vector3d p;
                p[axis] = sign * half[axis];
                const int u = (axis + 1) % 3, w = (axis + 2) % 3;
                p[u] = (uni(rng) - 0.5) * prim.size[u];
                p[w] = (uni(rng) - 0.5) * prim.size[w];
                out.push_back(prim.pose.apply(p));
            }
        }
    }
    return out;
}

}  // namespace osr
