#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace osr {

/// Polar raster geometry of one imaging sonar. The swept angle spans
/// [-angular_aperture/2, +angular_aperture/2]; the unmeasured axis has
/// beam width vertical_aperture.
struct SonarIntrinsics {
    double min_range = 0.0;          // m
    double max_range = 10.0;         // m
    int num_range_bins = 512;
    int num_beams = 256;
    double angular_aperture = 2.2689280275926285;   // 130 deg
    double vertical_aperture = 0.3490658503988659;  // 20 deg

    void validate() const {
        if (!(min_range >= 0.0 && min_range < max_range))
            throw std::invalid_argument("SonarIntrinsics: require 0 <= min_range < max_range");
        if (num_range_bins < 2 || num_beams < 2)
            throw std::invalid_argument("SonarIntrinsics: require >= 2 bins and beams");
        if (!(angular_aperture > 0.0 && angular_aperture < 3.15) ||
            !(vertical_aperture > 0.0 && vertical_aperture < 3.15))
            throw std::invalid_argument("SonarIntrinsics: apertures must lie in (0, pi)");
    }

    double range_bin_width() const { return (max_range - min_range) / num_range_bins; }
    double beam_width() const { return angular_aperture / num_beams; }
};

enum class Orientation { horizontal, vertical };

inline std::string to_string(Orientation o) {
    return o == Orientation::horizontal ? "horizontal" : "vertical";
}

/// Dense range x angle intensity raster. Rows are range bins, columns are
/// beams, row-major. Immutable after construction.
class PolarImage {
public:
    PolarImage(SonarIntrinsics intrinsics, Orientation orientation)
        : intrinsics_(intrinsics), orientation_(orientation),
          data_(static_cast<std::size_t>(intrinsics.num_range_bins) * intrinsics.num_beams, 0.0f) {
        intrinsics_.validate();
    }

    PolarImage(SonarIntrinsics intrinsics, Orientation orientation, std::vector<float> data)
        : intrinsics_(intrinsics), orientation_(orientation), data_(std::move(data)) {
        intrinsics_.validate();
        if (data_.size() != static_cast<std::size_t>(intrinsics_.num_range_bins) * intrinsics_.num_beams)
            throw std::invalid_argument("PolarImage: data size does not match intrinsics");
    }

    const SonarIntrinsics& intrinsics() const { return intrinsics_; }
    Orientation orientation() const { return orientation_; }
    int rows() const { return intrinsics_.num_range_bins; }
    int cols() const { return intrinsics_.num_beams; }

    float at(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * intrinsics_.num_beams + j];
    }
    float& at(int i, int j) {
        return data_[static_cast<std::size_t>(i) * intrinsics_.num_beams + j];
    }

    const std::vector<float>& data() const { return data_; }

    std::pair<float, float> min_max() const {
        float lo = data_.empty() ? 0.0f : data_[0];
        float hi = lo;
        for (float v : data_) {
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        }
        return {lo, hi};
    }

private:
    SonarIntrinsics intrinsics_;
    Orientation orientation_;
    std::vector<float> data_;
};

/// One contact pixel. `angle` is the swept angle of the source image:
/// bearing for the horizontal sonar, the elevation-plane angle for the
/// vertical one. After extrinsic compensation the raster indices still
/// refer to the source image while (range, angle) live in the companion
/// frame.
struct Detection {
    int range_bin = 0;
    int beam = 0;
    double range = 0.0;      // m
    double angle = 0.0;      // rad
    double intensity = 0.0;  // raw units
};

/// Bin-center polar coordinates of raster cell (i, j).
std::pair<double, double> bin_to_polar(int i, int j, const SonarIntrinsics& k);

/// True iff beam j of `own` lies inside the vertical aperture of the
/// orthogonal companion (the conservative overlap gate).
bool overlap_pass(int j, const SonarIntrinsics& own, const SonarIntrinsics& companion);

}  // namespace osr
