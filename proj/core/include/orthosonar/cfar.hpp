#pragma once

#include <array>
#include <functional>
#include <vector>

#include "orthosonar/sonar_image.hpp"

namespace osr {

struct CfarParams {
    int train_cells_per_axis = 8;  // half-window of training cells beyond the guards
    int guard_cells_per_axis = 2;
    double p_fa = 1e-3;

    void validate() const {
        if (train_cells_per_axis < 1) throw std::invalid_argument("CfarParams: train >= 1");
        if (guard_cells_per_axis < 0) throw std::invalid_argument("CfarParams: guard >= 0");
        if (!(p_fa > 0.0 && p_fa < 1.0)) throw std::invalid_argument("CfarParams: p_fa in (0,1)");
    }

    /// Half extent of the full window around the cell under test.
    int window_half_extent() const { return train_cells_per_axis + guard_cells_per_axis; }

    /// Training cells per quadrant: train rows x full window width.
    int cells_per_quadrant() const {
        return train_cells_per_axis * (2 * window_half_extent() + 1);
    }
};

/// Detection constant alpha = N * (p_fa^(-1/N) - 1).
double detection_constant(int n, double p_fa);

/// Means of the four directional training blocks (up, down, left, right)
/// around cell (i, j). Each block is train x (2*(train+guard)+1) cells and
/// excludes the guard ring and the cell under test. Throws if the full
/// window does not fit inside the raster.
std::array<double, 4> quadrant_noise_estimates(const PolarImage& image, int i, int j,
                                               const CfarParams& params);

/// Smallest-of threshold beta = min(mu_1..mu_4) * alpha.
double soca_threshold(const PolarImage& image, int i, int j, const CfarParams& params);

/// SOCA-CFAR contact extraction. A cell is a detection iff the beam mask
/// passes, the full window fits (border cells are skipped, not clamped)
/// and intensity > beta (strict). Detections carry bin-center polar
/// coordinates.
std::vector<Detection> cfar_detect(const PolarImage& image, const CfarParams& params,
                                   const std::function<bool(int)>& beam_mask);

/// Convenience overload with no beam gating.
std::vector<Detection> cfar_detect(const PolarImage& image, const CfarParams& params);

}  // namespace osr
