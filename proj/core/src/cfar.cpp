#include "orthosonar/cfar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace osr {

double detection_constant(int n, double p_fa) {
    if (n < 1) throw std::invalid_argument("detection_constant: N >= 1");
    if (!(p_fa > 0.0 && p_fa < 1.0)) throw std::invalid_argument("detection_constant: p_fa in (0,1)");
    return n * (std::pow(p_fa, -1.0 / n) - 1.0);
}

namespace {

struct Blocks {
    // Row/col ranges, inclusive, for the four training blocks.
    struct Block { int r0, r1, c0, c1; };
    std::array<Block, 4> b;
};

Blocks training_blocks(int i, int j, const CfarParams& p) {
    const int g = p.guard_cells_per_axis;
    const int t = p.train_cells_per_axis;
    const int w = g + t;
    Blocks out;
    out.b[0] = {i - w, i - g - 1, j - w, j + w};  // up
    out.b[1] = {i + g + 1, i + w, j - w, j + w};  // down
    out.b[2] = {i - w, i + w, j - w, j - g - 1};  // left
    out.b[3] = {i - w, i + w, j + g + 1, j + w};  // right
    return out;
}

bool window_fits(const PolarImage& image, int i, int j, const CfarParams& p) {
    const int w = p.window_half_extent();
    return i - w >= 0 && i + w < image.rows() && j - w >= 0 && j + w < image.cols();
}

// Summed-area table; sat(i, j) = sum of cells in [0, i) x [0, j).
class Sat {
public:
    explicit Sat(const PolarImage& image)
        : cols_(image.cols() + 1), sums_((image.rows() + 1) * static_cast<std::size_t>(cols_), 0.0) {
        for (int i = 0; i < image.rows(); ++i) {
            double row = 0.0;
            for (int j = 0; j < image.cols(); ++j) {
                row += image.at(i, j);
                sums_[(i + 1) * static_cast<std::size_t>(cols_) + j + 1] =
                    sums_[i * static_cast<std::size_t>(cols_) + j + 1] + row;
            }
        }
    }

    double block_sum(int r0, int r1, int c0, int c1) const {  // inclusive bounds
        return at(r1 + 1, c1 + 1) - at(r0, c1 + 1) - at(r1 + 1, c0) + at(r0, c0);
    }

private:
    double at(int i, int j) const { return sums_[i * static_cast<std::size_t>(cols_) + j]; }
    int cols_;
    std::vector<double> sums_;
};

}  // namespace

std::array<double, 4> quadrant_noise_estimates(const PolarImage& image, int i, int j,
                                               const CfarParams& params) {
    params.validate();
    if (!window_fits(image, i, j, params))
        throw std::invalid_argument("quadrant_noise_estimates: window does not fit");
    const Blocks blocks = training_blocks(i, j, params);
    const double n = params.cells_per_quadrant();
    std::array<double, 4> out{};
    for (int q = 0; q < 4; ++q) {
        double sum = 0.0;
        const auto& b = blocks.b[q];
        for (int r = b.r0; r <= b.r1; ++r)
            for (int c = b.c0; c <= b.c1; ++c) sum += image.at(r, c);
        out[q] = sum / n;
    }
    return out;
}

double soca_threshold(const PolarImage& image, int i, int j, const CfarParams& params) {
    const auto mu = quadrant_noise_estimates(image, i, j, params);
    const double mu_min = *std::min_element(mu.begin(), mu.end());
    return mu_min * detection_constant(params.cells_per_quadrant(), params.p_fa);
}

std::vector<Detection> cfar_detect(const PolarImage& image, const CfarParams& params,
                                   const std::function<bool(int)>& beam_mask) {
    params.validate();
    const int w = params.window_half_extent();
    const double alpha = detection_constant(params.cells_per_quadrant(), params.p_fa);
    const double n = params.cells_per_quadrant();
    std::vector<Detection> out;
    if (image.rows() <= 2 * w || image.cols() <= 2 * w) return out;

    const Sat sat(image);
    std::vector<char> pass(image.cols(), 1);
    if (beam_mask)
        for (int j = 0; j < image.cols(); ++j) pass[j] = beam_mask(j) ? 1 : 0;

    for (int i = w; i < image.rows() - w; ++i) {
        for (int j = w; j < image.cols() - w; ++j) {
            if (!pass[j]) continue;
            const double x = image.at(i, j);
            const Blocks blocks = training_blocks(i, j, params);
            double mu_min = std::numeric_limits<double>::infinity();
            for (const auto& b : blocks.b)
                mu_min = std::min(mu_min, sat.block_sum(b.r0, b.r1, b.c0, b.c1) / n);
            if (x > mu_min * alpha) {
                const auto [range, angle] = bin_to_polar(i, j, image.intrinsics());
                out.push_back({i, j, range, angle, x});
            }
        }
    }
    return out;
}

std::vector<Detection> cfar_detect(const PolarImage& image, const CfarParams& params) {
    return cfar_detect(image, params, nullptr);
}

}  // namespace osr
