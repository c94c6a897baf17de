// cycle_analysis.hpp — Numerical location of the fixed points and 2-cycles of
// the Bloch map, Jacobians, and stability classification.
#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blochmap/core_map.hpp"

namespace blochmap {

// Analytic Jacobian of step_bloch at x.
Eigen::Matrix3d jacobian(const BlochVector& x);

// Attractive: every multiplier magnitude < 1. Repelling: every one > 1.
// Saddle: mixed. Marginal flags a magnitude within 1e-6 of 1 instead of
// silently classifying it.
enum class Stability : std::uint8_t { Attractive, Repelling, Saddle, Marginal };

const char* stability_name(Stability s);

struct CycleRecord {
    std::string name;                       // C0..C6 once assigned
    std::vector<BlochVector> points;        // length 1 or 2; cycles ordered so step maps k -> k+1
    int length = 1;
    std::vector<double> purities;
    std::array<double, 3> multipliers{};    // eigenvalue moduli of the cycle Jacobian, descending
    Stability stability = Stability::Marginal;
    double residual = 0.0;                  // max over the cycle of |M(x_k) - x_{k+1}|
};

struct CycleSearchOptions {
    int grid = 21;              // seeds per axis on [-1,1]^3, intersected with the ball
    double damping = 0.5;       // Newton step fraction
    int max_newton = 200;
    double newton_tol = 1e-12;  // residual threshold for convergence
    double dedup_radius = 1e-6;
};

struct CycleSearchResult {
    std::vector<CycleRecord> records;
    long seeds_total = 0;
    long seeds_converged = 0;
    long seeds_rejected = 0;    // non-convergent or escaped seeds, dropped
};

// Deduplicated roots of step_bloch applied `length` times, found by damped
// Newton iteration from the seed grid. The 2-cycle search excludes fixed
// points; 2-cycles are deduplicated up to cyclic rotation. Records come back
// classified and named.
CycleSearchResult find_cycles(int length, const CycleSearchOptions& options = {});

// Fills multipliers and the stability class from the eigenvalue moduli of the
// ordered product of Jacobians around the cycle. Requires residual < 1e-10.
CycleRecord classify_stability(CycleRecord record);

// The seven reference cycles (C0..C6) at full double precision, refined by
// Newton iteration from coarse starting guesses. Computed once and cached.
const std::vector<CycleRecord>& reference_cycles();

// Convenience accessors into reference_cycles().
const CycleRecord& reference_cycle(const std::string& name);
BlochVector fixed_point_c1();
BlochVector fixed_point_c2();
BlochVector fixed_point_c5();
BlochVector fixed_point_c6();

// Purity of C1; the purity threshold below which the basin border loses
// fractality coincides with it numerically.
double critical_purity();

} // namespace blochmap
