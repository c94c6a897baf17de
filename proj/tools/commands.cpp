#include "commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

#include "blochmap/cycle_analysis.hpp"
#include "blochmap/fractal_metrics.hpp"
#include "blochmap/parallel.hpp"
#include "writers.hpp"

namespace blochmap::cli {

namespace {

std::string istr(long long v) { return std::to_string(v); }

std::vector<Rgb> colorize(const RegionMap& map) {
    std::vector<Rgb> pixels(map.labels.size());
    for (std::size_t k = 0; k < map.labels.size(); ++k) {
        pixels[k] = label_color(map.labels[k]);
    }
    return pixels;
}

// Raster rows run bottom-up in map coordinates; image files expect the top row
// first.
void write_map_image(const std::filesystem::path& path, const RegionMap& map,
                     const std::vector<Rgb>& pixels, const std::string& config_line) {
    std::vector<Rgb> flipped(pixels.size());
    for (int j = 0; j < map.height; ++j) {
        const std::size_t src = static_cast<std::size_t>(j) * map.width;
        const std::size_t dst = static_cast<std::size_t>(map.height - 1 - j) * map.width;
        std::copy_n(pixels.begin() + src, map.width, flipped.begin() + dst);
    }
    write_ppm(path, map.width, map.height, flipped, config_line);
}

RegionMap render_for(const RunConfig& cfg) {
    const ClassifyOptions opt{cfg.tol, cfg.max_iter};
    if (cfg.plane) {
        return render_plane_map(cfg.window, cfg.width, cfg.height, opt, cfg.resolved_threads());
    }
    return render_region_map(cfg.purity, cfg.window, cfg.width, cfg.height, opt,
                             cfg.resolved_threads());
}

std::complex<double> julia_anchor() {
    return to_complex(stereographic_project(fixed_point_c2(), 1.0));
}

void write_region_csv(const std::filesystem::path& path, const RegionMap& map, bool plane,
                      const std::string& config_line) {
    const std::array<std::string, 9> columns = {"pixel_i", "pixel_j", "x",     "y",         "u",
                                                "v",       "w",       "label", "iterations"};
    CsvWriter csv(path, config_line, columns);
    const double r = std::sqrt(std::max(0.0, 2.0 * map.purity - 1.0));
    for (int j = 0; j < map.height; ++j) {
        const double y = map.pixel_y(j);
        for (int i = 0; i < map.width; ++i) {
            const double x = map.pixel_x(i);
            BlochVector p;
            if (plane) {
                p = {x, 0.0, y};
            } else {
                const double s = 2.0 * r / (1.0 + x * x + y * y);
                p = {s * x, s * y, s - r};
            }
            csv.row(std::array<std::string, 9>{
                istr(i), istr(j), format_real(x), format_real(y), format_real(p.u),
                format_real(p.v), format_real(p.w), label_name(map.at(i, j)),
                istr(map.iterations[map.index(i, j)])});
        }
    }
    csv.commit();
}

} // namespace

std::uint64_t derive_orbit_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 finalizer over master + index.
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<BlochVector> backward_ensemble(int depth, double start_purity) {
    const JuliaSample sample = julia_sample(julia_anchor(), depth);
    std::vector<BlochVector> out;
    out.reserve(sample.points.size());
    for (const BlochVector& p : sample.points) {
        out.push_back(shrink_to_purity(p, start_purity));
    }
    return out;
}

TraceFamilies trace_seed_families(int julia_seed_depth, std::uint64_t seed) {
    TraceFamilies fam;
    fam.julia_vicinity = backward_ensemble(julia_seed_depth, 0.99);

    // Scatter seeds in tiny balls around the two on-plane cycle points that lie
    // on the mixed/pure border, nudged off the plane.
    const CycleRecord& c4 = reference_cycle("C4");
    std::mt19937_64 rng(derive_orbit_seed(seed, 0x7261636Bu));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    constexpr double radius = 2e-3;
    constexpr int per_point = 64;
    for (const BlochVector& center : c4.points) {
        for (int k = 0; k < per_point; ++k) {
            BlochVector offset;
            do {
                offset = {unit(rng), unit(rng), unit(rng)};
            } while (norm2(offset) > 1.0 || norm(offset) < 0.05);
            fam.plane_border.push_back({center.u + radius * offset.u,
                                        center.v + radius * offset.v,
                                        center.w + radius * offset.w});
        }
    }
    return fam;
}

TraceFamilies trace_overlay_points(const RunConfig& cfg) {
    const TraceFamilies seeds = trace_seed_families(cfg.depth, cfg.seed);
    const PurityBand band{cfg.band_lo, cfg.band_hi};
    TraceFamilies out;
    out.julia_vicinity = preimage_cloud(seeds.julia_vicinity, cfg.trace_depth, band);
    out.plane_border = preimage_cloud(seeds.plane_border, cfg.trace_depth, band);
    return out;
}

int cmd_regions(const RunConfig& cfg) {
    const RegionMap map = render_for(cfg);
    const std::string echo = cfg.summary();
    write_map_image(cfg.out + ".ppm", map, colorize(map), echo);
    write_region_csv(cfg.out + ".csv", map, cfg.plane, echo);
    return 0;
}

int cmd_dimension(const RunConfig& cfg) {
    const std::string echo = cfg.summary();
    DimensionJob job;
    job.window = cfg.window;
    job.width = cfg.width;
    job.height = cfg.height;
    job.classify = {cfg.tol, cfg.max_iter};
    job.scales = cfg.scales;
    job.threads = cfg.resolved_threads();

    if (cfg.purity_given) {
        // Single-purity audit: the raw scale/count table behind the estimate.
        job.purity = cfg.purity;
        const DimensionEstimate est = dimension_at_purity(job);
        const std::array<std::string, 5> columns = {"row_type", "scale", "count", "d_bc",
                                                    "r_squared"};
        CsvWriter csv(cfg.out + ".csv", echo, columns);
        for (std::size_t k = 0; k < est.scales.size(); ++k) {
            csv.row(std::array<std::string, 5>{"scale", istr(est.scales[k]), istr(est.counts[k]),
                                               "", ""});
        }
        csv.row(std::array<std::string, 5>{"fit", "", "", format_real(est.slope),
                                           format_real(est.r_squared)});
        csv.commit();
        return 0;
    }

    std::vector<double> purities;
    for (double p = cfg.sweep_min; p <= cfg.sweep_max + 1e-9; p += cfg.sweep_step) {
        purities.push_back(std::min(p, 1.0));
    }
    const SweepResult sweep = purity_sweep(purities, job);
    const std::array<std::string, 9> columns = {
        "row_type", "purity", "d_bc", "r_squared", "border_pixels",
        "width",    "height", "interval_lo", "interval_hi"};
    CsvWriter csv(cfg.out + ".csv", echo, columns);
    for (const SweepRow& row : sweep.rows) {
        csv.row(std::array<std::string, 9>{"purity", format_real(row.purity),
                                           format_real(row.d_bc), format_real(row.r_squared),
                                           istr(row.border_pixels), istr(cfg.width),
                                           istr(cfg.height), "", ""});
    }
    csv.row(std::array<std::string, 9>{"transition", format_real(sweep.transition_estimate), "",
                                       "", "", "", "", format_real(sweep.transition_interval.first),
                                       format_real(sweep.transition_interval.second)});
    csv.commit();
    return 0;
}

int cmd_cycles(const RunConfig& cfg) {
    const CycleSearchResult fixed = find_cycles(1);
    const CycleSearchResult pairs = find_cycles(2);
    std::vector<CycleRecord> records = fixed.records;
    records.insert(records.end(), pairs.records.begin(), pairs.records.end());
    std::sort(records.begin(), records.end(),
              [](const CycleRecord& a, const CycleRecord& b) { return a.name < b.name; });

    const std::string echo = cfg.summary() + " seeds_total=" +
                             istr(fixed.seeds_total + pairs.seeds_total) + " seeds_converged=" +
                             istr(fixed.seeds_converged + pairs.seeds_converged) +
                             " seeds_rejected=" + istr(fixed.seeds_rejected + pairs.seeds_rejected);
    const std::array<std::string, 15> columns = {
        "name",    "length",  "u1",    "v1",    "w1",        "purity1",   "u2",      "v2",
        "w2",      "purity2", "mult1", "mult2", "mult3",     "stability", "residual"};
    CsvWriter csv(cfg.out + ".csv", echo, columns);
    for (const CycleRecord& rec : records) {
        const BlochVector& p0 = rec.points[0];
        std::array<std::string, 15> fields = {
            rec.name,
            istr(rec.length),
            format_real(p0.u),
            format_real(p0.v),
            format_real(p0.w),
            format_real(rec.purities[0]),
            "",
            "",
            "",
            "",
            format_real(rec.multipliers[0]),
            format_real(rec.multipliers[1]),
            format_real(rec.multipliers[2]),
            stability_name(rec.stability),
            format_real(rec.residual),
        };
        if (rec.length == 2) {
            const BlochVector& p1 = rec.points[1];
            fields[6] = format_real(p1.u);
            fields[7] = format_real(p1.v);
            fields[8] = format_real(p1.w);
            fields[9] = format_real(rec.purities[1]);
        }
        csv.row(fields);
    }
    csv.commit();
    return 0;
}

int cmd_backward(const RunConfig& cfg) {
    const std::vector<BlochVector> ensemble = backward_ensemble(cfg.depth, 0.99);
    const int orbits = std::min<int>(cfg.backward_orbits, static_cast<int>(ensemble.size()));

    std::vector<std::string> strategies;
    if (cfg.strategy == "all") {
        strategies = {"plus", "minus", "random"};
    } else {
        strategies = {cfg.strategy};
    }

    const std::string echo = cfg.summary();
    const std::array<std::string, 7> columns = {"strategy", "orbit", "step", "u",
                                                "v",        "w",     "purity"};
    CsvWriter csv(cfg.out + ".csv", echo, columns);
    long long truncated = 0;

    // Traces are independent; compute them in parallel, emit in order.
    for (const std::string& name : strategies) {
        std::vector<BackwardTrace> traces(orbits);
        parallel_for(0, orbits, cfg.resolved_threads(), [&](int k) {
            BranchStrategy strat;
            if (name == "plus") {
                strat = BranchStrategy::all_plus();
            } else if (name == "minus") {
                strat = BranchStrategy::all_minus();
            } else {
                strat = BranchStrategy::random_seeded(
                    derive_orbit_seed(cfg.seed, static_cast<std::uint64_t>(k)));
            }
            traces[k] = backward_orbit(ensemble[k], strat, cfg.backward_steps);
        });
        for (int k = 0; k < orbits; ++k) {
            if (traces[k].truncated) ++truncated;
            for (const BackwardStep& step : traces[k].steps) {
                csv.row(std::array<std::string, 7>{
                    name, istr(k), istr(step.index), format_real(step.point.u),
                    format_real(step.point.v), format_real(step.point.w),
                    format_real(step.state_purity)});
            }
        }
    }
    csv.comment("truncated_orbits=" + istr(truncated));
    csv.commit();
    return 0;
}

int cmd_trace(const RunConfig& cfg) {
    const RegionMap map = render_for(cfg);
    const TraceFamilies overlay = trace_overlay_points(cfg);
    const std::string echo = cfg.summary();

    std::vector<Rgb> pixels = colorize(map);
    const std::array<std::string, 10> columns = {"family", "u", "v", "w",       "purity",
                                                 "x",      "y", "pixel_i", "pixel_j", "in_window"};
    CsvWriter csv(cfg.out + ".csv", echo, columns);

    auto draw = [&](const std::vector<BlochVector>& points, Rgb color, const char* family) {
        for (const BlochVector& p : points) {
            const BlochVector on_sphere = shrink_to_purity(p, cfg.purity);
            ProjectedPoint proj;
            try {
                proj = stereographic_project(on_sphere, cfg.purity);
            } catch (const PoleProjection&) {
                continue;
            }
            int i = 0, j = 0;
            const bool inside = map.locate(proj.x, proj.y, i, j);
            if (inside) {
                pixels[map.index(i, j)] = color;
            }
            csv.row(std::array<std::string, 10>{
                family, format_real(p.u), format_real(p.v), format_real(p.w),
                format_real(purity(p)), format_real(proj.x), format_real(proj.y),
                inside ? istr(i) : "", inside ? istr(j) : "", inside ? "1" : "0"});
        }
    };
    draw(overlay.julia_vicinity, k_overlay_dark, "julia_vicinity");
    draw(overlay.plane_border, k_overlay_yellow, "plane_border");

    write_map_image(cfg.out + ".ppm", map, pixels, echo);
    csv.commit();
    return 0;
}

int cmd_julia(const RunConfig& cfg) {
    const JuliaSample sample = julia_sample(julia_anchor(), cfg.depth);
    const std::string echo = cfg.summary();
    const std::array<std::string, 7> columns = {"index", "u", "v", "w", "x", "y", "purity"};
    CsvWriter csv(cfg.out + ".csv", echo, columns);
    for (std::size_t k = 0; k < sample.points.size(); ++k) {
        const BlochVector& p = sample.points[k];
        std::string sx, sy;
        try {
            const ProjectedPoint proj = stereographic_project(p, 1.0);
            sx = format_real(proj.x);
            sy = format_real(proj.y);
        } catch (const PoleProjection&) {
            // The south pole has no image; leave the plane coordinates blank.
        }
        csv.row(std::array<std::string, 7>{istr(static_cast<long long>(k)), format_real(p.u),
                                           format_real(p.v), format_real(p.w), sx, sy,
                                           format_real(purity(p))});
    }
    csv.commit();
    return 0;
}

} // namespace blochmap::cli
