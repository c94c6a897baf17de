// commands.hpp — Implementations of the CLI subcommands. Split from main so the
// integration and acceptance suites can drive the same code paths directly.
#pragma once

#include <cstdint>
#include <vector>

#include "blochmap/inverse_dynamics.hpp"
#include "run_config.hpp"

namespace blochmap::cli {

// Per-orbit generator seed derived from the master seed, so parallel or
// reordered execution cannot change any orbit's branch sequence.
std::uint64_t derive_orbit_seed(std::uint64_t master, std::uint64_t index);

// The Fig-style backward-iteration ensemble: all depth-`depth` pre-images of
// the pure fixed point 'image of C2', radially reduced to the given purity.
std::vector<BlochVector> backward_ensemble(int depth, double start_purity);

// The two seed families of the pre-image border experiment: points near the
// Julia set reduced to purity 0.99, and points scattered around the two
// on-plane cycle points that sit on the mixed/pure basin border.
struct TraceFamilies {
    std::vector<BlochVector> julia_vicinity;
    std::vector<BlochVector> plane_border;
};

TraceFamilies trace_seed_families(int julia_seed_depth, std::uint64_t seed);

// Pre-image clouds of both families restricted to the configured purity band.
TraceFamilies trace_overlay_points(const RunConfig& cfg);

int cmd_regions(const RunConfig& cfg);
int cmd_dimension(const RunConfig& cfg);
int cmd_cycles(const RunConfig& cfg);
int cmd_backward(const RunConfig& cfg);
int cmd_trace(const RunConfig& cfg);
int cmd_julia(const RunConfig& cfg);

} // namespace blochmap::cli
