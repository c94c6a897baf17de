#include "blochmap/basin_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "blochmap/parallel.hpp"

namespace blochmap {

namespace {

constexpr int k_confirm_hits = 3; // consecutive in-tolerance checks before a verdict

double dist2(const BlochVector& a, double bu, double bv, double bw) {
    const double du = a.u - bu, dv = a.v - bv, dw = a.w - bw;
    return du * du + dv * dv + dw * dw;
}

bool convergent(ConvergenceLabel label) {
    return label == ConvergenceLabel::MixedC0 || label == ConvergenceLabel::PureC3A ||
           label == ConvergenceLabel::PureC3B;
}

bool pair_matches(ConvergenceLabel a, ConvergenceLabel b, BorderKind kind) {
    switch (kind) {
        case BorderKind::Any:
            return true;
        case BorderKind::PurePure:
            return a != ConvergenceLabel::MixedC0 && b != ConvergenceLabel::MixedC0;
        case BorderKind::MixedPure:
            return a == ConvergenceLabel::MixedC0 || b == ConvergenceLabel::MixedC0;
    }
    return false;
}

RegionMap make_map(double purity_level, const Window& window, int width, int height) {
    if (width < 16 || height < 16) {
        throw std::invalid_argument("region map: resolution must be at least 16x16");
    }
    if (window.x_max <= window.x_min || window.y_max <= window.y_min) {
        throw std::invalid_argument("region map: empty window");
    }
    RegionMap map;
    map.purity = purity_level;
    map.window = window;
    map.width = width;
    map.height = height;
    map.labels.assign(static_cast<std::size_t>(width) * height, ConvergenceLabel::OutsideDomain);
    map.iterations.assign(static_cast<std::size_t>(width) * height, 0);
    return map;
}

} // namespace

const char* label_name(ConvergenceLabel label) {
    switch (label) {
        case ConvergenceLabel::MixedC0: return "MixedC0";
        case ConvergenceLabel::PureC3A: return "PureC3A";
        case ConvergenceLabel::PureC3B: return "PureC3B";
        case ConvergenceLabel::NonConvergent: return "NonConvergent";
        case ConvergenceLabel::OutsideDomain: return "OutsideDomain";
    }
    return "unknown";
}

OrbitClass classify_orbit(const BlochVector& x0, const ClassifyOptions& options) {
    if (options.tol <= 0.0) throw std::invalid_argument("classify_orbit: tol must be positive");
    if (options.max_iter < 1) throw std::invalid_argument("classify_orbit: max_iter must be >= 1");

    const double tol2 = options.tol * options.tol;
    BlochVector x = x0;
    int hits_c0 = 0, hits_a = 0, hits_b = 0;
    for (int n = 0;; ++n) {
        if (norm2(x) < tol2) {
            if (++hits_c0 >= k_confirm_hits) return {ConvergenceLabel::MixedC0, n};
        } else {
            hits_c0 = 0;
        }
        if ((n & 1) == 0) {
            if (dist2(x, 1.0, 0.0, 0.0) < tol2) {
                if (++hits_a >= k_confirm_hits) return {ConvergenceLabel::PureC3A, n};
            } else {
                hits_a = 0;
            }
            if (dist2(x, 0.0, 0.0, 1.0) < tol2) {
                if (++hits_b >= k_confirm_hits) return {ConvergenceLabel::PureC3B, n};
            } else {
                hits_b = 0;
            }
        }
        if (n == options.max_iter) break;
        x = step_bloch(x);
    }
    return {ConvergenceLabel::NonConvergent, options.max_iter};
}

bool RegionMap::locate(double x, double y, int& i, int& j) const {
    const double fx = (x - window.x_min) / (window.x_max - window.x_min) * width;
    const double fy = (y - window.y_min) / (window.y_max - window.y_min) * height;
    i = static_cast<int>(std::floor(fx));
    j = static_cast<int>(std::floor(fy));
    return i >= 0 && i < width && j >= 0 && j < height;
}

RegionMap render_region_map(double purity_level, const Window& window, int width, int height,
                            const ClassifyOptions& options, int threads) {
    if (purity_level < 0.5 || purity_level > 1.0 + k_ball_tol) {
        throw std::invalid_argument("render_region_map: purity must lie in [0.5, 1]");
    }
    RegionMap map = make_map(purity_level, window, width, height);
    const double r = std::sqrt(std::max(0.0, 2.0 * purity_level - 1.0));
    parallel_for(0, height, threads, [&](int j) {
        const double y = map.pixel_y(j);
        for (int i = 0; i < width; ++i) {
            const double x = map.pixel_x(i);
            const double s = 2.0 * r / (1.0 + x * x + y * y);
            const OrbitClass oc = classify_orbit({s * x, s * y, s - r}, options);
            map.labels[map.index(i, j)] = oc.label;
            map.iterations[map.index(i, j)] = oc.iterations;
        }
    });
    return map;
}

RegionMap render_plane_map(const Window& window, int width, int height,
                           const ClassifyOptions& options, int threads) {
    if (window.x_min < -1.0 || window.x_max > 1.0 || window.y_min < -1.0 || window.y_max > 1.0) {
        throw std::invalid_argument("render_plane_map: window must lie within [-1,1]^2");
    }
    RegionMap map = make_map(0.5, window, width, height);
    parallel_for(0, height, threads, [&](int j) {
        const double w = map.pixel_y(j);
        for (int i = 0; i < width; ++i) {
            const double u = map.pixel_x(i);
            if (u * u + w * w > 1.0) {
                map.labels[map.index(i, j)] = ConvergenceLabel::OutsideDomain;
                continue;
            }
            const OrbitClass oc = classify_orbit({u, 0.0, w}, options);
            map.labels[map.index(i, j)] = oc.label;
            map.iterations[map.index(i, j)] = oc.iterations;
        }
    });
    return map;
}

long long BorderMask::count() const {
    return std::accumulate(set.begin(), set.end(), 0LL,
                           [](long long acc, std::uint8_t b) { return acc + (b != 0); });
}

BorderMask extract_border(const RegionMap& map, BorderKind kind) {
    BorderMask mask{map.width, map.height,
                    std::vector<std::uint8_t>(map.labels.size(), std::uint8_t{0})};
    for (int j = 0; j < map.height; ++j) {
        for (int i = 0; i < map.width; ++i) {
            const ConvergenceLabel here = map.at(i, j);
            if (!convergent(here)) continue;
            if (i + 1 < map.width) {
                const ConvergenceLabel right = map.at(i + 1, j);
                if (convergent(right) && right != here && pair_matches(here, right, kind)) {
                    mask.set[mask.index(i, j)] = 1;
                }
            }
            if (j + 1 < map.height) {
                const ConvergenceLabel down = map.at(i, j + 1);
                if (convergent(down) && down != here && pair_matches(here, down, kind)) {
                    mask.set[mask.index(i, j)] = 1;
                }
            }
        }
    }
    return mask;
}

BorderMask dilate(const BorderMask& mask, int radius) {
    if (radius < 0) throw std::invalid_argument("dilate: radius must be non-negative");
    BorderMask out{mask.width, mask.height,
                   std::vector<std::uint8_t>(mask.set.size(), std::uint8_t{0})};
    for (int j = 0; j < mask.height; ++j) {
        for (int i = 0; i < mask.width; ++i) {
            if (!mask.test(i, j)) continue;
            const int j0 = std::max(0, j - radius), j1 = std::min(mask.height - 1, j + radius);
            const int i0 = std::max(0, i - radius), i1 = std::min(mask.width - 1, i + radius);
            for (int jj = j0; jj <= j1; ++jj) {
                for (int ii = i0; ii <= i1; ++ii) {
                    out.set[out.index(ii, jj)] = 1;
                }
            }
        }
    }
    return out;
}

} // namespace blochmap
