// blochmap — deterministic simulation toolkit for an iterated nonlinear qubit
// map: basin rasterization, box-counting dimension sweeps, cycle tables,
// backward orbits, and pre-image border traces.
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run_config.hpp"

namespace {

using blochmap::cli::RunConfig;

constexpr int k_exit_usage = 2;
constexpr int k_exit_numeric = 3;

struct WindowOpt {
    std::vector<double> values;
};

void add_common(CLI::App* sub, RunConfig& cfg, WindowOpt& window, std::string& resolution) {
    sub->add_option("--window", window.values,
                    "raster window as x0,x1,y0,y1 (default -3,3,-3,3; plane maps -1,1,-1,1; "
                    "trace 0,3,0,3)")
        ->delimiter(',')
        ->expected(4);
    sub->add_option("--resolution", resolution, "raster size as WxH (default 512x512)");
    sub->add_option("--tol", cfg.tol, "orbit convergence tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", cfg.max_iter, "iteration cap per orbit")
        ->check(CLI::PositiveNumber);
    sub->add_option("--scales", cfg.scales, "box sizes in pixels (default powers of 2 up to W/8)")
        ->delimiter(',');
    sub->add_option("--seed", cfg.seed, "master seed for randomized strategies");
    sub->add_option("--depth", cfg.depth, "inverse-iteration depth")->check(CLI::Range(0, 20));
    sub->add_option("--strategy", cfg.strategy, "branch strategy")
        ->check(CLI::IsMember({"plus", "minus", "random", "all"}));
    sub->add_option("--threads", cfg.threads, "worker threads (default: logical cores)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--out", cfg.out, "output path stem (writes <out>.csv / <out>.ppm)");
}

bool parse_resolution(const std::string& text, RunConfig& cfg) {
    if (text.empty()) return true;
    int w = 0, h = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%dx%d%c", &w, &h, &extra) != 2 || w < 1 || h < 1) {
        return false;
    }
    cfg.width = w;
    cfg.height = h;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"blochmap: iterated nonlinear qubit map toolkit"};
    app.set_config("--config", "", "read flag defaults from a key=value file");
    app.require_subcommand(1);

    RunConfig cfg;
    WindowOpt window;
    std::string resolution;

    CLI::App* regions = app.add_subcommand("regions", "rasterize convergence regions");
    regions->add_option("--purity", cfg.purity, "purity of the sampled sphere")
        ->check(CLI::Range(0.5, 1.0));
    regions->add_flag("--plane", cfg.plane, "classify the invariant plane instead of a sphere");
    add_common(regions, cfg, window, resolution);

    CLI::App* dimension = app.add_subcommand("dimension", "box-counting dimension sweep");
    auto* dim_purity = dimension->add_option(
        "--purity", cfg.purity, "single-purity audit run emitting the scale/count table");
    dimension->add_option("--sweep-min", cfg.sweep_min, "sweep lower purity bound");
    dimension->add_option("--sweep-max", cfg.sweep_max, "sweep upper purity bound");
    dimension->add_option("--sweep-step", cfg.sweep_step, "sweep purity step")
        ->check(CLI::PositiveNumber);
    add_common(dimension, cfg, window, resolution);

    CLI::App* cycles = app.add_subcommand("cycles", "fixed points and 2-cycles table");
    add_common(cycles, cfg, window, resolution);

    CLI::App* backward = app.add_subcommand("backward", "backward orbits of the Julia ensemble");
    backward->add_option("--orbits", cfg.backward_orbits, "orbits per strategy")
        ->check(CLI::PositiveNumber);
    backward->add_option("--steps", cfg.backward_steps, "backward steps per orbit")
        ->check(CLI::PositiveNumber);
    add_common(backward, cfg, window, resolution);

    CLI::App* trace = app.add_subcommand("trace", "pre-image overlays on a region map");
    trace->add_option("--purity", cfg.purity, "purity of the underlying sphere")
        ->check(CLI::Range(0.5, 1.0));
    trace->add_option("--tree-depth", cfg.trace_depth, "pre-image tree depth")
        ->check(CLI::Range(0, 16));
    trace->add_option("--band", [&cfg](const std::vector<std::string>& vals) {
             char extra = 0;
             return std::sscanf(vals[0].c_str(), "%lf,%lf%c", &cfg.band_lo, &cfg.band_hi,
                                &extra) == 2 &&
                    cfg.band_lo <= cfg.band_hi;
         },
         "purity band lo,hi kept from the pre-image tree");
    add_common(trace, cfg, window, resolution);

    CLI::App* julia = app.add_subcommand("julia", "inverse-iteration Julia sample");
    add_common(julia, cfg, window, resolution);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help / --version
        }
        app.exit(e);
        return k_exit_usage;
    }

    if (!parse_resolution(resolution, cfg)) {
        std::fprintf(stderr, "invalid --resolution, expected WxH\n");
        return k_exit_usage;
    }
    if (window.values.size() == 4) {
        cfg.window = {window.values[0], window.values[1], window.values[2], window.values[3]};
        cfg.window_given = true;
    }

    CLI::App* chosen = app.get_subcommands().front();
    cfg.command = chosen->get_name();
    cfg.purity_given = dim_purity->count() > 0;
    if (!cfg.window_given) {
        if (cfg.plane) cfg.window = {-1.0, 1.0, -1.0, 1.0};
        if (cfg.command == "trace") cfg.window = {0.0, 3.0, 0.0, 3.0};
    }
    if (cfg.command == "trace" && trace->count("--purity") == 0) cfg.purity = 0.9;

    try {
        if (chosen == regions) return blochmap::cli::cmd_regions(cfg);
        if (chosen == dimension) return blochmap::cli::cmd_dimension(cfg);
        if (chosen == cycles) return blochmap::cli::cmd_cycles(cfg);
        if (chosen == backward) return blochmap::cli::cmd_backward(cfg);
        if (chosen == trace) return blochmap::cli::cmd_trace(cfg);
        if (chosen == julia) return blochmap::cli::cmd_julia(cfg);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return k_exit_usage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return k_exit_numeric;
    }
    return k_exit_usage;
}
