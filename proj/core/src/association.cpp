#include "orthosonar/association.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <thread>
#include <tuple>

namespace osr {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void parallel_for(int n, int threads, const std::function<void(int, int)>& body) {
    threads = std::max(1, std::min(threads, n));
    if (threads <= 1) {
        if (n > 0) body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    const int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int lo = t * chunk;
        const int hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(body, lo, hi);
    }
    for (auto& th : pool) th.join();
}

}  // namespace

DbscanResult dbscan(const std::vector<Detection>& detections, const DbscanParams& params) {
    params.validate();
    const int n = static_cast<int>(detections.size());
    DbscanResult res;
    res.labels.assign(n, -1);
    if (n == 0) return res;

    std::vector<double> px(n), py(n);
    for (int i = 0; i < n; ++i) {
        px[i] = detections[i].range;
        py[i] = detections[i].range * detections[i].angle;
    }
    const double eps2 = params.epsilon * params.epsilon;
    std::vector<std::vector<int>> neighbors(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double dx = px[i] - px[j];
            const double dy = py[i] - py[j];
            if (dx * dx + dy * dy <= eps2) neighbors[i].push_back(j);
        }
    }

    std::vector<char> core(n, 0);
    for (int i = 0; i < n; ++i)
        core[i] = static_cast<int>(neighbors[i].size()) >= params.min_samples;

    UnionFind uf(n);
    for (int i = 0; i < n; ++i) {
        if (!core[i]) continue;
        for (int j : neighbors[i])
            if (core[j]) uf.unite(i, j);
    }

    // Label cluster roots in order of their lowest core index.
    std::vector<int> root_label(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (!core[i]) continue;
        const int r = uf.find(i);
        if (root_label[r] < 0) root_label[r] = next++;
        res.labels[i] = root_label[r];
    }
    for (int i = 0; i < n; ++i) {
        if (core[i]) continue;
        for (int j : neighbors[i]) {
            if (core[j]) {
                res.labels[i] = root_label[uf.find(j)];
                break;  // neighbors are in ascending order
            }
        }
    }

    res.clusters.resize(next);
    for (int c = 0; c < next; ++c) res.clusters[c].label = c;
    for (int i = 0; i < n; ++i) {
        if (res.labels[i] >= 0)
            res.clusters[res.labels[i]].members.push_back(i);
        else
            res.noise.push_back(i);
    }
    return res;
}

ClusterDescriptor cluster_descriptor(const std::vector<Detection>& detections, const Cluster& c) {
    if (c.members.empty()) throw std::invalid_argument("cluster_descriptor: empty cluster");
    ClusterDescriptor d;
    d.r_min = d.r_max = detections[c.members.front()].range;
    double sum = 0.0;
    for (int idx : c.members) {
        const double r = detections[idx].range;
        sum += r;
        d.r_min = std::min(d.r_min, r);
        d.r_max = std::max(d.r_max, r);
    }
    d.mean_range = sum / c.members.size();
    double ss = 0.0;
    for (int idx : c.members) {
        const double e = detections[idx].range - d.mean_range;
        ss += e * e;
    }
    d.range_variance = ss / c.members.size();
    return d;
}

std::vector<std::pair<int, int>> associate_clusters(const std::vector<ClusterDescriptor>& h,
                                                    const std::vector<ClusterDescriptor>& v,
                                                    double gate) {
    std::vector<std::pair<int, int>> pairs;
    if (h.empty() || v.empty()) return pairs;
    for (int i = 0; i < static_cast<int>(h.size()); ++i) {
        int best = -1;
        double best_cost = std::numeric_limits<double>::infinity();
        for (int j = 0; j < static_cast<int>(v.size()); ++j) {
            const double dm = h[i].mean_range - v[j].mean_range;
            const double dv = h[i].range_variance - v[j].range_variance;
            const double dn = h[i].r_min - v[j].r_min;
            const double dx = h[i].r_max - v[j].r_max;
            const double cost = std::sqrt(dm * dm + dv * dv + dn * dn + dx * dx);
            if (cost < best_cost) {
                best_cost = cost;
                best = j;
            }
        }
        if (best >= 0 && best_cost <= gate) pairs.emplace_back(i, best);
    }
    return pairs;
}

FeatureDescriptor feature_descriptor(const PolarImage& image, const Detection& d,
                                     int kernel_halfwidth) {
    const auto [lo, hi] = image.min_max();
    return feature_descriptor(image, d, kernel_halfwidth, lo, hi);
}

FeatureDescriptor feature_descriptor(const PolarImage& image, const Detection& d,
                                     int kernel_halfwidth, float image_min, float image_max) {
    if (kernel_halfwidth < 1) throw std::invalid_argument("feature_descriptor: kernel >= 1");
    const double span = static_cast<double>(image_max) - static_cast<double>(image_min);
    const auto norm = [&](double v) {
        if (span <= 0.0) return 0.0;
        return (v - image_min) / span;
    };

    // mu_x: +-i beams on the same row; mu_y: +-i range bins on the same column.
    double sum_x = 0.0;
    int n_x = 0;
    for (int k = -kernel_halfwidth; k <= kernel_halfwidth; ++k) {
        if (k == 0) continue;
        const int j = d.beam + k;
        if (j < 0 || j >= image.cols()) continue;
        sum_x += image.at(d.range_bin, j);
        ++n_x;
    }
    double sum_y = 0.0;
    int n_y = 0;
    for (int k = -kernel_halfwidth; k <= kernel_halfwidth; ++k) {
        if (k == 0) continue;
        const int i = d.range_bin + k;
        if (i < 0 || i >= image.rows()) continue;
        sum_y += image.at(i, d.beam);
        ++n_y;
    }
    const double mu_x = n_x > 0 ? norm(sum_x / n_x) : 0.0;
    const double mu_y = n_y > 0 ? norm(sum_y / n_y) : 0.0;

    FeatureDescriptor out;
    out.range = std::clamp(d.range / image.intrinsics().max_range, 0.0, 1.0);
    out.intensity = norm(d.intensity);
    if (image.orientation() == Orientation::horizontal) {
        out.mean_a = mu_x;
        out.mean_b = mu_y;
    } else {
        out.mean_a = mu_y;
        out.mean_b = mu_x;
    }
    return out;
}

namespace {

struct Candidate {
    double cost;
    int h_index;
    int v_index;
};

bool candidate_less(const Candidate& a, const Candidate& b,
                    const std::vector<Detection>& h, const std::vector<Detection>& v) {
    if (a.cost != b.cost) return a.cost < b.cost;
    const auto key = [&](const Candidate& c) {
        return std::tuple(h[c.h_index].range_bin, h[c.h_index].beam,
                          v[c.v_index].range_bin, v[c.v_index].beam);
    };
    return key(a) < key(b);
}

}  // namespace

std::vector<Match> associate_features(const PolarImage& h_image,
                                      const std::vector<Detection>& h_detections,
                                      const PolarImage& v_image,
                                      const std::vector<Detection>& v_detections,
                                      const std::vector<Cluster>& h_clusters,
                                      const std::vector<Cluster>& v_clusters,
                                      const std::vector<std::pair<int, int>>& cluster_pairs,
                                      const MatchParams& params) {
    params.validate();
    std::vector<Match> matches;
    if (cluster_pairs.empty()) return matches;

    const auto [h_min, h_max] = h_image.min_max();
    const auto [v_min, v_max] = v_image.min_max();

    std::vector<FeatureDescriptor> h_desc(h_detections.size());
    std::vector<FeatureDescriptor> v_desc(v_detections.size());
    std::vector<char> h_used(h_detections.size(), 0), v_used(v_detections.size(), 0);
    for (const auto& [hc, vc] : cluster_pairs) {
        for (int i : h_clusters[hc].members)
            if (!h_used[i]) {
                h_desc[i] = feature_descriptor(h_image, h_detections[i], params.kernel_halfwidth,
                                               h_min, h_max);
                h_used[i] = 1;
            }
        for (int j : v_clusters[vc].members)
            if (!v_used[j]) {
                v_desc[j] = feature_descriptor(v_image, v_detections[j], params.kernel_halfwidth,
                                               v_min, v_max);
                v_used[j] = 1;
            }
    }

    // Tasks: one per h-feature, carrying its paired v-cluster.
    struct Task {
        int h_index;
        const std::vector<int>* v_members;
    };
    std::vector<Task> tasks;
    for (const auto& [hc, vc] : cluster_pairs)
        for (int i : h_clusters[hc].members) tasks.push_back({i, &v_clusters[vc].members});

    std::vector<std::vector<Candidate>> per_task(tasks.size());

    if (params.mode == MatchMode::brute) {
        parallel_for(static_cast<int>(tasks.size()), params.threads, [&](int lo, int hi) {
            for (int t = lo; t < hi; ++t) {
                const Task& task = tasks[t];
                auto& cands = per_task[t];
                for (int j : *task.v_members) {
                    const double cost = h_desc[task.h_index].distance(v_desc[j]);
                    if (cost < params.threshold) cands.push_back({cost, task.h_index, j});
                }
            }
        });
        std::vector<Candidate> all;
        for (auto& c : per_task) all.insert(all.end(), c.begin(), c.end());
        std::sort(all.begin(), all.end(), [&](const Candidate& a, const Candidate& b) {
            return candidate_less(a, b, h_detections, v_detections);
        });
        std::vector<char> h_claimed(h_detections.size(), 0), v_claimed(v_detections.size(), 0);
        for (const auto& c : all) {
            if (h_claimed[c.h_index] || v_claimed[c.v_index]) continue;
            h_claimed[c.h_index] = v_claimed[c.v_index] = 1;
            matches.push_back({c.h_index, c.v_index, c.cost});
        }
        return matches;
    }

    // Fast mode: per-feature RNG substream keyed on the h detection index,
    // candidates evaluated in parallel, claims applied sequentially.
    parallel_for(static_cast<int>(tasks.size()), params.threads, [&](int lo, int hi) {
        for (int t = lo; t < hi; ++t) {
            const Task& task = tasks[t];
            const auto& members = *task.v_members;
            std::mt19937_64 rng(splitmix64(params.seed ^
                                           (0x9E3779B97F4A7C15ULL * (task.h_index + 1))));
            auto& cands = per_task[t];
            for (int s = 0; s < params.sample_count; ++s) {
                const int j = members[rng() % members.size()];
                const double cost = h_desc[task.h_index].distance(v_desc[j]);
                if (cost < params.threshold) cands.push_back({cost, task.h_index, j});
            }
            std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
                return candidate_less(a, b, h_detections, v_detections);
            });
        }
    });

    // Deterministic acceptance order: ascending h detection index.
    std::vector<int> order(tasks.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return tasks[a].h_index < tasks[b].h_index; });
    std::vector<char> v_claimed(v_detections.size(), 0);
    for (int t : order) {
        for (const auto& c : per_task[t]) {
            if (v_claimed[c.v_index]) continue;
            v_claimed[c.v_index] = 1;
            matches.push_back({c.h_index, c.v_index, c.cost});
            break;
        }
    }
    return matches;
}

}  // namespace osr
