// basin_classifier.hpp — Orbit classification into the attractors of the map
// and rasterization of convergence regions over constant-purity spheres and
// the invariant plane.
#pragma once

#include <cstdint>
#include <vector>

#include "blochmap/core_map.hpp"

namespace blochmap {

// Outcome class of an orbit. PureC3A means the even-index subsequence converges
// to (1,0,0), PureC3B that it converges to (0,0,1).
enum class ConvergenceLabel : std::uint8_t {
    MixedC0,
    PureC3A,
    PureC3B,
    NonConvergent,
    OutsideDomain,
};

const char* label_name(ConvergenceLabel label);

struct ClassifyOptions {
    double tol = 1e-6;
    int max_iter = 2000;
};

struct OrbitClass {
    ConvergenceLabel label = ConvergenceLabel::NonConvergent;
    int iterations = 0;
};

// MixedC0 once |x_n| < tol for 3 consecutive n; PureC3A/B once the even-index
// subsequence stays within tol of the respective cycle point for 3 consecutive
// even n; NonConvergent at max_iter exhaustion.
OrbitClass classify_orbit(const BlochVector& x0, const ClassifyOptions& options = {});

struct Window {
    double x_min = -3.0;
    double x_max = 3.0;
    double y_min = -3.0;
    double y_max = 3.0;
};

// Rasterized basin classification. Pixel (i, j) covers the center of its cell;
// index j*width + i with y growing along j.
struct RegionMap {
    double purity = 1.0;
    Window window{};
    int width = 0;
    int height = 0;
    std::vector<ConvergenceLabel> labels;
    std::vector<int> iterations;

    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * width + i; }
    ConvergenceLabel at(int i, int j) const { return labels[index(i, j)]; }
    double pixel_x(int i) const {
        return window.x_min + (i + 0.5) * (window.x_max - window.x_min) / width;
    }
    double pixel_y(int j) const {
        return window.y_min + (j + 0.5) * (window.y_max - window.y_min) / height;
    }
    // Nearest pixel indices for a plane point; false when outside the window.
    bool locate(double x, double y, int& i, int& j) const;
};

// Classifies the sphere of the given purity pixel by pixel through the inverse
// stereographic projection. purity 0.5 degenerates to the single point C0 and
// is accepted as a smoke case. Classification uses no randomness, so identical
// inputs give identical maps at any thread count.
RegionMap render_region_map(double purity_level, const Window& window, int width, int height,
                            const ClassifyOptions& options = {}, int threads = 1);

// Classification over the invariant plane v = 0 with coordinates (u, w) taken
// directly from the window; pixels with u² + w² > 1 are OutsideDomain.
RegionMap render_plane_map(const Window& window, int width, int height,
                           const ClassifyOptions& options = {}, int threads = 1);

// Binary grid aligned with a RegionMap.
struct BorderMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> set;

    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * width + i; }
    bool test(int i, int j) const { return set[index(i, j)] != 0; }
    long long count() const;
};

// Which label pairs count as a border crack.
enum class BorderKind : std::uint8_t {
    Any,        // any two distinct convergent labels
    PurePure,   // PureC3A against PureC3B
    MixedPure,  // MixedC0 against either pure phase
};

// Marks the lower-index pixel of every crack between differently labeled,
// convergent neighbors, giving a single-pixel-wide border line. OutsideDomain
// and NonConvergent pixels never participate.
BorderMask extract_border(const RegionMap& map, BorderKind kind = BorderKind::Any);

// Chebyshev dilation by the given radius.
BorderMask dilate(const BorderMask& mask, int radius);

} // namespace blochmap
