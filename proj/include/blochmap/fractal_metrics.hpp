// fractal_metrics.hpp — Box-counting dimension of border masks, the purity
// sweep of the dimension, and phase-transition detection.
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "blochmap/basin_classifier.hpp"

namespace blochmap {

struct EmptyMask : MapError {
    using MapError::MapError;
};
struct DegenerateFit : MapError {
    using MapError::MapError;
};

// Box sizes in pixels, occupied-box counts, and the fitted log-log slope.
struct DimensionEstimate {
    std::vector<int> scales;
    std::vector<long long> counts;
    double slope = 0.0;      // D_bc
    double intercept = 0.0;
    double r_squared = 0.0;
    long long border_pixels = 0;
};

// Powers of two from 2 up to width/8.
std::vector<int> default_scales(int width);

// counts[k] = number of side-`scales[k]` boxes anchored at the grid origin that
// contain at least one set pixel. Scales must be strictly increasing, each >= 1
// and at most min(width, height)/4. Throws EmptyMask when nothing is set.
std::vector<long long> box_count(const BorderMask& mask, std::span<const int> scales);

// Counts averaged over four grid anchor offsets; optional variant of the
// origin-anchored default.
std::vector<double> box_count_offset_mean(const BorderMask& mask, std::span<const int> scales);

// Least-squares fit of log(count) against log(1/scale); the slope is D_bc.
// Needs at least 4 scales with counts >= 1; throws DegenerateFit when every
// count is equal.
DimensionEstimate fit_dimension(std::span<const int> scales, std::span<const long long> counts);

// Raster + border + box-count + fit pipeline for one purity sphere.
struct DimensionJob {
    double purity = 1.0;
    Window window{};
    int width = 1024;
    int height = 1024;
    ClassifyOptions classify{};
    std::vector<int> scales;  // empty selects default_scales(width)
    int threads = 1;
};

DimensionEstimate dimension_at_purity(const DimensionJob& job);

struct SweepRow {
    double purity = 0.0;
    double d_bc = 0.0;
    long long border_pixels = 0;
    double r_squared = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // sorted by purity
    double transition_estimate = 0.0;
    std::pair<double, double> transition_interval{0.0, 0.0};
};

// One row per purity (empty masks record a zero dimension); the transition is
// the midpoint of the adjacent pair with the largest drop in D_bc, which is
// robust to the fluctuation band of the fractal plateau.
SweepResult purity_sweep(std::span<const double> purities, const DimensionJob& base);

} // namespace blochmap
