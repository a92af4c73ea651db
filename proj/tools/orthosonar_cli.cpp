// Command-line front end: simulate | detect | reconstruct | eval.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "orthosonar/io.hpp"
#include "orthosonar/metrics.hpp"
#include "orthosonar/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_simulate(const std::string& scene_path, const std::string& out_dir, std::uint64_t seed,
                 bool seed_set) {
    osr::io::SceneFile sf = osr::io::load_scene(scene_path);
    if (seed_set) sf.scene.noise.seed = seed;
    fs::create_directories(out_dir);

    osr::io::Manifest manifest;
    manifest.extrinsics = sf.rig.extrinsics();
    for (std::size_t i = 0; i < sf.trajectory.size(); ++i) {
        const osr::FramePair frame = osr::render_pair(sf.scene, sf.rig, sf.trajectory[i], i);
        char name[64];
        std::snprintf(name, sizeof(name), "frame_%03zu", i);
        const std::string h_name = std::string(name) + "_h.osi";
        const std::string v_name = std::string(name) + "_v.osi";
        osr::io::write_osi((fs::path(out_dir) / h_name).string(), frame.horizontal);
        osr::io::write_osi((fs::path(out_dir) / v_name).string(), frame.vertical);
        manifest.entries.push_back({h_name, v_name, frame.pose});
    }
    osr::io::save_manifest((fs::path(out_dir) / "manifest.json").string(), manifest);
    std::cout << "wrote " << sf.trajectory.size() << " frame pairs to " << out_dir << "\n";
    return 0;
}

int run_detect(const std::string& input, const std::string& out, const osr::CfarParams& params) {
    const osr::PolarImage image = osr::io::read_osi(input);
    const auto detections = osr::cfar_detect(image, params);
    osr::io::write_detections_csv(out, detections);
    std::cout << detections.size() << " detections -> " << out << "\n";
    return 0;
}

int run_reconstruct(const std::string& manifest_path, const std::string& out,
                    const osr::PipelineConfig& config, const std::string& matches_csv) {
    const osr::io::Manifest manifest = osr::io::load_manifest(manifest_path);
    osr::PipelineConfig cfg = config;
    cfg.extrinsics = manifest.extrinsics;

    std::vector<osr::CartesianPoint> map;
    std::vector<osr::Detection> all_h, all_v;
    std::vector<osr::Match> all_matches;
    for (const auto& e : manifest.entries) {
        osr::FramePair frame{osr::io::read_osi(e.horizontal), osr::io::read_osi(e.vertical),
                             e.pose};
        const auto rec = osr::reconstruct_frame_detailed(frame, cfg);
        const auto world = osr::transform_to_world(rec.points, frame.pose);
        map.insert(map.end(), world.begin(), world.end());
        if (!matches_csv.empty()) {
            const int h_off = static_cast<int>(all_h.size());
            const int v_off = static_cast<int>(all_v.size());
            all_h.insert(all_h.end(), rec.h_detections.begin(), rec.h_detections.end());
            all_v.insert(all_v.end(), rec.v_detections.begin(), rec.v_detections.end());
            for (auto m : rec.matches) {
                m.h_index += h_off;
                m.v_index += v_off;
                all_matches.push_back(m);
            }
        }
    }
    osr::io::write_ply(out, map);
    if (!matches_csv.empty()) osr::io::write_matches_csv(matches_csv, all_h, all_v, all_matches);
    std::cout << map.size() << " points -> " << out << "\n";
    return 0;
}

int run_eval(const std::string& cloud_path, const std::string& scene_path,
             const std::string& report_path, double inlier_cap) {
    const auto cloud = osr::io::read_ply(cloud_path);
    const osr::io::SceneFile sf = osr::io::load_scene(scene_path);
    const osr::MetricReport r = osr::evaluate(cloud, sf.scene, inlier_cap);

    json rj = {{"mae_m", r.mae},
               {"rmse_m", r.rmse},
               {"point_count", r.point_count},
               {"inlier_fraction", r.inlier_fraction},
               {"inlier_cap_m", inlier_cap}};
    if (!report_path.empty()) osr::io::atomic_write(report_path, rj.dump(2) + "\n");

    std::printf("points:          %zu\n", r.point_count);
    std::printf("MAE:             %.3f cm\n", r.mae * 100.0);
    std::printf("RMSE:            %.3f cm\n", r.rmse * 100.0);
    std::printf("inlier fraction: %.4f (cap %.1f cm)\n", r.inlier_fraction, inlier_cap * 100.0);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthosonar: dual orthogonal imaging-sonar 3D reconstruction"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    bool seed_set = false;
    app.add_option("--seed", seed, "fix all randomness")->each([&](const std::string&) {
        seed_set = true;
    });

    // simulate
    // fallthrough lets the global --seed appear after the subcommand name
    auto* sim = app.add_subcommand("simulate", "render a scene into OSI frame pairs");
    sim->fallthrough();
    std::string scene_path, out_dir;
    sim->add_option("--scene", scene_path, "scene JSON")->required();
    sim->add_option("--out", out_dir, "output directory")->required();

    // detect
    auto* det = app.add_subcommand("detect", "run SOCA-CFAR on one OSI image");
    det->fallthrough();
    std::string det_input, det_out = "detections.csv";
    double pfa = 1e-3;
    int train = 8, guard = 2;
    det->add_option("--input", det_input, "OSI image")->required();
    det->add_option("--out", det_out, "detections CSV");
    det->add_option("--pfa", pfa, "false alarm probability");
    det->add_option("--train", train, "training cells per axis");
    det->add_option("--guard", guard, "guard cells per axis");

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "run the full pipeline on a manifest");
    rec->fallthrough();
    std::string manifest_path, rec_out = "cloud.ply", config_path, matches_csv;
    std::string mode = "brute", clustering = "on";
    double threshold = 0.1;
    double rec_pfa = 1e-3;
    int threads = 1;
    rec->add_option("--manifest", manifest_path, "manifest JSON")->required();
    rec->add_option("--out", rec_out, "output PLY");
    rec->add_option("--mode", mode, "brute|fast")->check(CLI::IsMember({"brute", "fast"}));
    rec->add_option("--clustering", clustering, "on|off")->check(CLI::IsMember({"on", "off"}));
    rec->add_option("--threshold", threshold, "feature match threshold");
    rec->add_option("--pfa", rec_pfa, "CFAR false alarm probability");
    rec->add_option("--threads", threads, "worker threads");
    rec->add_option("--config", config_path, "JSON config merged over defaults");
    rec->add_option("--matches-csv", matches_csv, "diagnostic matches CSV");

    // eval
    auto* ev = app.add_subcommand("eval", "score a cloud against a scene");
    ev->fallthrough();
    std::string cloud_path, eval_scene, report_path;
    double inlier_cap = 0.10;
    ev->add_option("--cloud", cloud_path, "PLY cloud")->required();
    ev->add_option("--scene", eval_scene, "scene JSON")->required();
    ev->add_option("--out", report_path, "JSON report path");
    ev->add_option("--inlier-cap", inlier_cap, "inlier distance cap, m");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(sim)) return run_simulate(scene_path, out_dir, seed, seed_set);
        if (app.got_subcommand(det)) {
            osr::CfarParams p{train, guard, pfa};
            return run_detect(det_input, det_out, p);
        }
        if (app.got_subcommand(rec)) {
            osr::PipelineConfig cfg;
            if (!config_path.empty()) cfg = osr::io::load_config(config_path, cfg);
            // explicit flags win over the config file
            if (rec->count("--mode") || config_path.empty())
                cfg.mode = mode == "fast" ? osr::MatchMode::fast : osr::MatchMode::brute;
            if (rec->count("--clustering") || config_path.empty())
                cfg.clustering_enabled = clustering == "on";
            if (rec->count("--threshold") || config_path.empty()) cfg.match_threshold = threshold;
            if (rec->count("--pfa") || config_path.empty()) cfg.cfar.p_fa = rec_pfa;
            if (rec->count("--threads") || config_path.empty()) cfg.threads = threads;
            if (seed_set) cfg.seed = seed;
            return run_reconstruct(manifest_path, rec_out, cfg, matches_csv);
        }
        if (app.got_subcommand(ev)) return run_eval(cloud_path, eval_scene, report_path, inlier_cap);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
