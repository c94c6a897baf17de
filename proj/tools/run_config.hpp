// run_config.hpp — Resolved parameters of one CLI run and the fixed color
// table used by raster outputs.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blochmap/basin_classifier.hpp"

namespace blochmap::cli {

inline constexpr const char* k_version = "blochmap 0.1.0";

// Every run carries its fully resolved configuration so output files can echo
// it verbatim.
struct RunConfig {
    std::string command;

    double purity = 1.0;
    bool plane = false;
    Window window{-3.0, 3.0, -3.0, 3.0};
    bool window_given = false;
    int width = 512;
    int height = 512;
    double tol = 1e-6;
    int max_iter = 2000;
    std::vector<int> scales;          // empty -> default_scales(width)
    std::uint64_t seed = 1;
    int depth = 10;
    std::string strategy = "all";     // plus | minus | random | all
    int threads = 0;                  // 0 -> logical cores
    std::string out = "out";

    // dimension sweep bounds (single-purity audit mode when purity_given)
    double sweep_min = 0.70;
    double sweep_max = 1.00;
    double sweep_step = 0.01;
    bool purity_given = false;

    int backward_orbits = 1024;
    int backward_steps = 200;

    // trace: pre-image tree depth and purity band around the target sphere
    int trace_depth = 12;
    double band_lo = 0.895;
    double band_hi = 0.905;

    int resolved_threads() const;
    std::string summary() const;      // single-line key=value echo
};

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
};

// Fixed label palette: red mixed basin, light/dark blue pure phases, black
// non-convergent, white outside the domain.
Rgb label_color(ConvergenceLabel label);

inline constexpr Rgb k_overlay_dark{10, 10, 10};
inline constexpr Rgb k_overlay_yellow{255, 255, 0};

} // namespace blochmap::cli
