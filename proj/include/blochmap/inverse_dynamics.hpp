// inverse_dynamics.hpp — The two pre-image branches of the Bloch map and of the
// rational map, branch strategies, backward orbits with purity traces, and
// Julia-set sampling by inverse iteration.
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "blochmap/core_map.hpp"

namespace blochmap {

struct InfinitePreimage : MapError {
    using MapError::MapError;
};
struct ZeroVector : MapError {
    using MapError::MapError;
};

// Branch label of the two-valued inverse map. Plus selects the pre-image with
// u > 0 (or v > 0 when u = 0), Minus the other one. Validated by the branch
// fixed points: Plus fixes C1, Minus fixes C5 and C6.
enum class BranchChoice : std::uint8_t { Plus, Minus };

// Branch selection rule for a backward orbit.
struct BranchStrategy {
    enum class Kind : std::uint8_t { AllPlus, AllMinus, RandomSeeded, Explicit };

    Kind kind = Kind::AllPlus;
    std::uint64_t seed = 0;                // RandomSeeded: mt19937_64 seed, one fair coin per step
    std::vector<BranchChoice> sequence;    // Explicit: one entry per backward step

    static BranchStrategy all_plus() { return {Kind::AllPlus, 0, {}}; }
    static BranchStrategy all_minus() { return {Kind::AllMinus, 0, {}}; }
    static BranchStrategy random_seeded(std::uint64_t seed) { return {Kind::RandomSeeded, seed, {}}; }
    static BranchStrategy explicit_sequence(std::vector<BranchChoice> seq) {
        return {Kind::Explicit, 0, std::move(seq)};
    }
};

// One pre-image of the target under the chosen branch, or nullopt when the
// algebraic pre-image lies outside the Bloch ball beyond 1e-9 (it exists as a
// point of R^3 but not as a quantum state). Construction: solve
// u'w² - 2w + u' = 0 for the root with |w| <= 1; with D = 1 + w² set
// s = D(w' + sqrt(w'² + v'²))/2, u = ±sqrt(s), v = -v'D/(2u). When s = 0 the
// sign ambiguity transfers to v = ±sqrt(-w'D); at v' = 0, w' = 0 the pre-image
// on the axis is unique and both branches return it.
std::optional<BlochVector> invert_bloch_step(const BlochVector& target, BranchChoice branch);

// The two pre-images ±sqrt((1-z)/(1+z)) of the rational map. Throws
// InfinitePreimage at z = -1, whose only pre-image is the point at infinity.
std::pair<std::complex<double>, std::complex<double>> invert_rational(const std::complex<double>& z);

struct BackwardStep {
    int index = 0;
    BlochVector point{};
    double state_purity = 0.0;
};

// Backward orbit of length <= n+1 (including the start). `truncated` records an
// early stop because a pre-image left the ball; this is metadata, not failure.
struct BackwardTrace {
    std::vector<BackwardStep> steps;
    int requested_steps = 0;
    bool truncated = false;
};

BackwardTrace backward_orbit(const BlochVector& start, const BranchStrategy& strategy, int n);

// 2^depth pure states obtained by taking all pre-images of a repelling periodic
// point of the rational map, expressed in Bloch coordinates. Working on the
// sphere sidesteps the point at infinity (it is the south pole there).
struct JuliaSample {
    std::vector<BlochVector> points;
    int depth = 0;
};

JuliaSample julia_sample(const std::complex<double>& seed_point, int depth);

// Radial rescaling onto the sphere of the given purity; direction preserved.
BlochVector shrink_to_purity(const BlochVector& x, double target_purity);

struct PurityBand {
    double lo = 0.5;
    double hi = 1.0;

    bool contains(double p) const noexcept { return p >= lo && p <= hi; }
};

// Every point whose forward orbit reaches one of the seeds in at most `depth`
// steps and whose purity falls in the band, enumerated over all branch
// sequences with out-of-ball branches pruned. May return an empty vector.
std::vector<BlochVector> preimage_cloud(std::span<const BlochVector> seeds, int depth,
                                        PurityBand band);

} // namespace blochmap
