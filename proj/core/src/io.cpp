#include "orthosonar/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace osr::io {

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open file");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(path, std::string("invalid JSON: ") + e.what());
    }
    return j;
}

double get_number(const json& j, const std::string& path, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number())
        fail(path, "missing or non-numeric field '" + field + "'");
    return j[field].get<double>();
}

Eigen::Vector3d get_vec3(const json& j, const std::string& path, const std::string& field) {
    if (!j.contains(field) || !j[field].is_array() || j[field].size() != 3)
        fail(path, "field '" + field + "' must be a 3-element array");
    return {j[field][0].get<double>(), j[field][1].get<double>(), j[field][2].get<double>()};
}

RigidTransform parse_pose(const json& j, const std::string& path) {
    RigidTransform t;
    if (j.contains("translation")) t.translation = get_vec3(j, path, "translation");
    if (j.contains("rotation")) {
        const auto& r = j["rotation"];
        if (!r.is_array() || r.size() != 9)
            fail(path, "pose field 'rotation' must be a 9-element row-major array");
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) t.rotation(i, k) = r[i * 3 + k].get<double>();
    } else if (j.contains("rpy_deg")) {
        const Eigen::Vector3d rpy = get_vec3(j, path, "rpy_deg") * kPi / 180.0;
        t.rotation = (Eigen::AngleAxisd(rpy.z(), Eigen::Vector3d::UnitZ()) *
                      Eigen::AngleAxisd(rpy.y(), Eigen::Vector3d::UnitY()) *
                      Eigen::AngleAxisd(rpy.x(), Eigen::Vector3d::UnitX()))
                         .toRotationMatrix();
    }
    if (!t.is_valid(1e-6)) fail(path, "pose rotation is not orthonormal");
    return t;
}

json pose_to_json(const RigidTransform& t) {
    json j;
    j["translation"] = {t.translation.x(), t.translation.y(), t.translation.z()};
    std::vector<double> r(9);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) r[i * 3 + k] = t.rotation(i, k);
    j["rotation"] = r;
    return j;
}

SonarIntrinsics parse_intrinsics(const json& j, const std::string& path) {
    SonarIntrinsics k;
    k.min_range = get_number(j, path, "min_range");
    k.max_range = get_number(j, path, "max_range");
    k.num_range_bins = static_cast<int>(get_number(j, path, "range_bins"));
    k.num_beams = static_cast<int>(get_number(j, path, "beams"));
    if (j.contains("aperture_deg"))
        k.angular_aperture = get_number(j, path, "aperture_deg") * kPi / 180.0;
    else
        k.angular_aperture = get_number(j, path, "angular_aperture");
    if (j.contains("vertical_aperture_deg"))
        k.vertical_aperture = get_number(j, path, "vertical_aperture_deg") * kPi / 180.0;
    else
        k.vertical_aperture = get_number(j, path, "vertical_aperture");
    try {
        k.validate();
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
    return k;
}

json intrinsics_to_json(const SonarIntrinsics& k) {
    return {{"min_range", k.min_range},
            {"max_range", k.max_range},
            {"range_bins", k.num_range_bins},
            {"beams", k.num_beams},
            {"angular_aperture", k.angular_aperture},
            {"vertical_aperture", k.vertical_aperture}};
}

}  // namespace

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) fail(tmp, "cannot open for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) fail(tmp, "write failed");
    }
    std::filesystem::rename(tmp, path);
}

void write_osi(const std::string& path, const PolarImage& image) {
    json header;
    header["osi"] = 1;
    header["orientation"] = to_string(image.orientation());
    header["dims"] = {image.rows(), image.cols()};
    header["endianness"] = "little";
    header["intrinsics"] = intrinsics_to_json(image.intrinsics());

    std::string content = header.dump();
    content.push_back('\n');
    const auto& data = image.data();
    const std::size_t bytes = data.size() * sizeof(float);
    const std::size_t off = content.size();
    content.resize(off + bytes);
    std::memcpy(content.data() + off, data.data(), bytes);
    atomic_write(path, content);
}

PolarImage read_osi(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");
    std::string line;
    if (!std::getline(in, line)) fail(path, "missing OSI header");
    json header;
    try {
        header = json::parse(line);
    } catch (const std::exception& e) {
        fail(path, std::string("invalid OSI header: ") + e.what());
    }
    if (!header.contains("intrinsics")) fail(path, "missing field 'intrinsics'");
    const SonarIntrinsics k = parse_intrinsics(header["intrinsics"], path);
    if (!header.contains("orientation")) fail(path, "missing field 'orientation'");
    const std::string o = header["orientation"].get<std::string>();
    if (o != "horizontal" && o != "vertical") fail(path, "orientation must be horizontal|vertical");
    if (header.value("endianness", "little") != "little")
        fail(path, "only little-endian payloads are supported");

    std::vector<float> data(static_cast<std::size_t>(k.num_range_bins) * k.num_beams);
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(float)));
    if (in.gcount() != static_cast<std::streamsize>(data.size() * sizeof(float)))
        fail(path, "truncated OSI payload");
    return PolarImage(k, o == "horizontal" ? Orientation::horizontal : Orientation::vertical,
                      std::move(data));
}

void write_ply(const std::string& path, const std::vector<CartesianPoint>& cloud) {
    std::string content;
    content += "ply\nformat ascii 1.0\nelement vertex " + std::to_string(cloud.size()) +
               "\nproperty float x\nproperty float y\nproperty float z\nend_header\n";
    char buf[96];
    for (const auto& p : cloud) {
        std::snprintf(buf, sizeof(buf), "%.9g %.9g %.9g\n", p.x(), p.y(), p.z());
        content += buf;
    }
    atomic_write(path, content);
}

std::vector<CartesianPoint> read_ply(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open file");
    std::string line;
    std::size_t count = 0;
    bool header_done = false;
    if (!std::getline(in, line) || line != "ply") fail(path, "not a PLY file");
    while (std::getline(in, line)) {
        if (line.rfind("element vertex ", 0) == 0) count = std::stoul(line.substr(15));
        if (line == "end_header") {
            header_done = true;
            break;
        }
    }
    if (!header_done) fail(path, "missing end_header");
    std::vector<CartesianPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double x, y, z;
        if (!(in >> x >> y >> z)) fail(path, "truncated vertex list");
        out.emplace_back(x, y, z);
    }
    return out;
}

void write_detections_csv(const std::string& path, const std::vector<Detection>& detections) {
    std::string content = "range_bin,beam,range_m,angle_rad,intensity\n";
    char buf[160];
    for (const auto& d : detections) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.9g,%.9g,%.9g\n", d.range_bin, d.beam, d.range,
                      d.angle, d.intensity);
        content += buf;
    }
    atomic_write(path, content);
}

void write_matches_csv(const std::string& path, const std::vector<Detection>& h_detections,
                       const std::vector<Detection>& v_detections,
                       const std::vector<Match>& matches) {
    std::string content = "h_range_bin,h_beam,v_range_bin,v_beam,cost\n";
    char buf[160];
    for (const auto& m : matches) {
        const auto& h = h_detections[m.h_index];
        const auto& v = v_detections[m.v_index];
        std::snprintf(buf, sizeof(buf), "%d,%d,%d,%d,%.9g\n", h.range_bin, h.beam, v.range_bin,
                      v.beam, m.cost);
        content += buf;
    }
    atomic_write(path, content);
}

SceneFile load_scene(const std::string& path) {
    const json j = parse_file(path);
    SceneFile out;

    if (!j.contains("primitives") || !j["primitives"].is_array())
        fail(path, "missing array field 'primitives'");
    for (const auto& pj : j["primitives"]) {
        ScenePrimitive prim;
        const std::string kind = pj.value("kind", "");
        if (kind == "cylinder") {
            prim.kind = ScenePrimitive::Kind::cylinder;
            prim.radius = get_number(pj, path, "radius");
            prim.height = get_number(pj, path, "height");
        } else if (kind == "box") {
            prim.kind = ScenePrimitive::Kind::box;
            prim.size = get_vec3(pj, path, "size");
        } else {
            fail(path, "primitive field 'kind' must be cylinder|box");
        }
        if (pj.contains("reflectivity")) prim.reflectivity = pj["reflectivity"].get<double>();
        if (pj.contains("pose")) prim.pose = parse_pose(pj["pose"], path);
        try {
            prim.validate();
        } catch (const std::exception& e) {
            fail(path, e.what());
        }
        out.scene.primitives.push_back(prim);
    }

    if (j.contains("noise")) {
        const auto& nj = j["noise"];
        out.scene.noise.background_mean = nj.value("background_mean", 0.0);
        out.scene.noise.speckle_variance = nj.value("speckle_variance", 0.0);
        out.scene.noise.seed = nj.value("seed", 0ULL);
        if (out.scene.noise.background_mean < 0.0 || out.scene.noise.speckle_variance < 0.0)
            fail(path, "noise parameters must be non-negative");
    }

    if (j.contains("sonar")) {
        const auto& sj = j["sonar"];
        if (sj.contains("horizontal")) out.rig.horizontal = parse_intrinsics(sj["horizontal"], path);
        if (sj.contains("vertical")) out.rig.vertical = parse_intrinsics(sj["vertical"], path);
        out.rig.vertical_offset = sj.value("vertical_offset_m", 0.10);
        out.rig.rays_per_beam = sj.value("rays_per_beam", 128);
        out.rig.ghost_echo = sj.value("ghost_echo", false);
    }

    if (j.contains("trajectory")) {
        const auto& tj = j["trajectory"];
        const std::string type = tj.value("type", "poses");
        if (type == "poses") {
            if (!tj.contains("poses") || !tj["poses"].is_array())
                fail(path, "trajectory of type 'poses' needs array field 'poses'");
            for (const auto& pj : tj["poses"]) out.trajectory.push_back(parse_pose(pj, path));
        } else if (type == "orbit") {
            const Eigen::Vector3d center = get_vec3(tj, path, "center");
            const double range = get_number(tj, path, "range");
            const double a0 = get_number(tj, path, "start_deg") * kPi / 180.0;
            const double a1 = get_number(tj, path, "end_deg") * kPi / 180.0;
            const int count = static_cast<int>(get_number(tj, path, "count"));
            const double height = tj.value("height", 0.0);
            if (count < 1) fail(path, "orbit field 'count' must be >= 1");
            for (int i = 0; i < count; ++i) {
                const double a = count == 1 ? a0 : a0 + (a1 - a0) * i / (count - 1);
                RigidTransform pose;
                pose.translation = Eigen::Vector3d(center.x() + range * std::cos(a),
                                                   center.y() + range * std::sin(a), height);
                const double yaw = std::atan2(center.y() - pose.translation.y(),
                                              center.x() - pose.translation.x());
                pose.rotation =
                    Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix();
                out.trajectory.push_back(pose);
            }
        } else {
            fail(path, "trajectory field 'type' must be poses|orbit");
        }
    } else {
        out.trajectory.push_back(RigidTransform::identity());
    }
    return out;
}

Manifest load_manifest(const std::string& path) {
    const json j = parse_file(path);
    Manifest m;
    if (!j.contains("frames") || !j["frames"].is_array())
        fail(path, "missing array field 'frames'");
    const auto dir = std::filesystem::path(path).parent_path();
    for (const auto& fj : j["frames"]) {
        Manifest::Entry e;
        if (!fj.contains("horizontal") || !fj.contains("vertical"))
            fail(path, "frame entries need fields 'horizontal' and 'vertical'");
        e.horizontal = (dir / fj["horizontal"].get<std::string>()).string();
        e.vertical = (dir / fj["vertical"].get<std::string>()).string();
        if (fj.contains("pose")) e.pose = parse_pose(fj["pose"], path);
        m.entries.push_back(std::move(e));
    }
    if (j.contains("extrinsics"))
        m.extrinsics.transform_v_to_h = parse_pose(j["extrinsics"], path);
    else
        m.extrinsics = SonarExtrinsics::default_mount();
    return m;
}

void save_manifest(const std::string& path, const Manifest& manifest) {
    json j;
    j["frames"] = json::array();
    for (const auto& e : manifest.entries) {
        json fj;
        fj["horizontal"] = e.horizontal;
        fj["vertical"] = e.vertical;
        fj["pose"] = pose_to_json(e.pose);
        j["frames"].push_back(fj);
    }
    j["extrinsics"] = pose_to_json(manifest.extrinsics.transform_v_to_h);
    atomic_write(path, j.dump(2) + "\n");
}

PipelineConfig load_config(const std::string& path, PipelineConfig defaults) {
    const json j = parse_file(path);
    PipelineConfig c = defaults;
    if (j.contains("cfar")) {
        const auto& cj = j["cfar"];
        c.cfar.train_cells_per_axis = cj.value("train", c.cfar.train_cells_per_axis);
        c.cfar.guard_cells_per_axis = cj.value("guard", c.cfar.guard_cells_per_axis);
        c.cfar.p_fa = cj.value("p_fa", c.cfar.p_fa);
    }
    if (j.contains("dbscan")) {
        const auto& dj = j["dbscan"];
        c.dbscan.epsilon = dj.value("epsilon", c.dbscan.epsilon);
        c.dbscan.min_samples = dj.value("min_samples", c.dbscan.min_samples);
    }
    if (j.contains("mode")) {
        const std::string m = j["mode"].get<std::string>();
        if (m == "brute")
            c.mode = MatchMode::brute;
        else if (m == "fast")
            c.mode = MatchMode::fast;
        else
            fail(path, "field 'mode' must be brute|fast");
    }
    c.match_threshold = j.value("threshold", c.match_threshold);
    c.sample_count = j.value("sample_count", c.sample_count);
    c.kernel_halfwidth = j.value("kernel_halfwidth", c.kernel_halfwidth);
    c.cluster_gate = j.value("cluster_gate", c.cluster_gate);
    c.clustering_enabled = j.value("clustering", c.clustering_enabled);
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
    try {
        c.validate();
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
    return c;
}

}  // namespace osr::io
