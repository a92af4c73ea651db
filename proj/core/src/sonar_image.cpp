#include "orthosonar/sonar_image.hpp"

#include <cmath>

namespace osr {

std::pair<double, double> bin_to_polar(int i, int j, const SonarIntrinsics& k) {
    if (i < 0 || i >= k.num_range_bins || j < 0 || j >= k.num_beams)
        throw std::out_of_range("bin_to_polar: index outside raster");
    const double range = k.min_range + (i + 0.5) * k.range_bin_width();
    const double angle = -0.5 * k.angular_aperture + (j + 0.5) * k.beam_width();
    return {range, angle};
}

bool overlap_pass(int j, const SonarIntrinsics& own, const SonarIntrinsics& companion) {
    const double angle = -0.5 * own.angular_aperture + (j + 0.5) * own.beam_width();
    return std::abs(angle) <= 0.5 * companion.vertical_aperture;
}

}  // namespace osr
