#include "blochmap/fractal_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blochmap {

namespace {

void validate_scales(const BorderMask& mask, std::span<const int> scales) {
    if (scales.empty()) {
        throw std::invalid_argument("box_count: need at least one scale");
    }
    const int limit = std::min(mask.width, mask.height) / 4;
    for (std::size_t k = 0; k < scales.size(); ++k) {
        if (scales[k] < 1 || (k > 0 && scales[k] <= scales[k - 1])) {
            throw std::invalid_argument("box_count: scales must be strictly increasing and >= 1");
        }
        if (scales[k] > limit) {
            throw std::invalid_argument("box_count: scale exceeds min(width, height)/4");
        }
    }
}

long long count_at_scale(const BorderMask& mask, int scale, int off_x, int off_y) {
    const int bw = (mask.width + scale - 1 + off_x) / scale;
    const int bh = (mask.height + scale - 1 + off_y) / scale;
    std::vector<std::uint8_t> grid(static_cast<std::size_t>(bw) * bh, std::uint8_t{0});
    long long occupied = 0;
    for (int j = 0; j < mask.height; ++j) {
        const int bj = (j + off_y) / scale;
        for (int i = 0; i < mask.width; ++i) {
            if (!mask.test(i, j)) continue;
            const std::size_t cell = static_cast<std::size_t>(bj) * bw + (i + off_x) / scale;
            if (!grid[cell]) {
                grid[cell] = 1;
                ++occupied;
            }
        }
    }
    return occupied;
}

} // namespace

std::vector<int> default_scales(int width) {
    std::vector<int> scales;
    for (int s = 2; s <= width / 8; s *= 2) scales.push_back(s);
    return scales;
}

std::vector<long long> box_count(const BorderMask& mask, std::span<const int> scales) {
    validate_scales(mask, scales);
    if (mask.count() == 0) {
        throw EmptyMask("box_count: mask has no set pixels");
    }
    std::vector<long long> counts;
    counts.reserve(scales.size());
    for (int s : scales) counts.push_back(count_at_scale(mask, s, 0, 0));
    return counts;
}

std::vector<double> box_count_offset_mean(const BorderMask& mask, std::span<const int> scales) {
    validate_scales(mask, scales);
    if (mask.count() == 0) {
        throw EmptyMask("box_count_offset_mean: mask has no set pixels");
    }
    std::vector<double> counts;
    counts.reserve(scales.size());
    for (int s : scales) {
        const int h = s / 2;
        double acc = 0.0;
        acc += static_cast<double>(count_at_scale(mask, s, 0, 0));
        acc += static_cast<double>(count_at_scale(mask, s, h, 0));
        acc += static_cast<double>(count_at_scale(mask, s, 0, h));
        acc += static_cast<double>(count_at_scale(mask, s, h, h));
        counts.push_back(acc / 4.0);
    }
    return counts;
}

DimensionEstimate fit_dimension(std::span<const int> scales, std::span<const long long> counts) {
    if (scales.size() != counts.size()) {
        throw std::invalid_argument("fit_dimension: scale/count size mismatch");
    }
    if (scales.size() < 4) {
        throw std::invalid_argument("fit_dimension: need at least 4 scales");
    }
    bool all_equal = true;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] < 1) {
            throw std::invalid_argument("fit_dimension: counts must be >= 1");
        }
        all_equal = all_equal && counts[k] == counts[0];
    }
    if (all_equal) {
        throw DegenerateFit("fit_dimension: all box counts equal");
    }

    const std::size_t n = scales.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = -std::log(static_cast<double>(scales[k])); // log(1/scale)
        const double y = std::log(static_cast<double>(counts[k]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / n;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = -std::log(static_cast<double>(scales[k]));
        const double y = std::log(static_cast<double>(counts[k]));
        const double fit = slope * x + intercept;
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - mean_y) * (y - mean_y);
    }

    DimensionEstimate est;
    est.scales.assign(scales.begin(), scales.end());
    est.counts.assign(counts.begin(), counts.end());
    est.slope = slope;
    est.intercept = intercept;
    est.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 0.0;
    return est;
}

DimensionEstimate dimension_at_purity(const DimensionJob& job) {
    if (job.purity <= 0.5 || job.purity > 1.0 + k_ball_tol) {
        throw std::invalid_argument("dimension_at_purity: purity must lie in (0.5, 1]");
    }
    const RegionMap map =
        render_region_map(job.purity, job.window, job.width, job.height, job.classify, job.threads);
    const BorderMask border = extract_border(map);
    const std::vector<int> scales = job.scales.empty() ? default_scales(job.width) : job.scales;
    const std::vector<long long> counts = box_count(border, scales);
    DimensionEstimate est = fit_dimension(scales, counts);
    est.border_pixels = border.count();
    return est;
}

SweepResult purity_sweep(std::span<const double> purities, const DimensionJob& base) {
    if (purities.size() < 2) {
        throw std::invalid_argument("purity_sweep: need at least two purity values");
    }
    SweepResult result;
    result.rows.reserve(purities.size());
    for (double p : purities) {
        DimensionJob job = base;
        job.purity = p;
        SweepRow row;
        row.purity = p;
        try {
            const DimensionEstimate est = dimension_at_purity(job);
            row.d_bc = est.slope;
            row.border_pixels = est.border_pixels;
            row.r_squared = est.r_squared;
        } catch (const EmptyMask&) {
            // Single-label map (deep below the transition); keep the zero row.
        }
        result.rows.push_back(row);
    }
    std::sort(result.rows.begin(), result.rows.end(),
              [](const SweepRow& a, const SweepRow& b) { return a.purity < b.purity; });

    double best_drop = -1.0;
    for (std::size_t k = 0; k + 1 < result.rows.size(); ++k) {
        const double drop = result.rows[k + 1].d_bc - result.rows[k].d_bc;
        if (drop > best_drop) {
            best_drop = drop;
            result.transition_interval = {result.rows[k].purity, result.rows[k + 1].purity};
            result.transition_estimate =
                0.5 * (result.rows[k].purity + result.rows[k + 1].purity);
        }
    }
    return result;
}

} // namespace blochmap
