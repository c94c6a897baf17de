#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "blochmap/cycle_analysis.hpp"
#include "blochmap/inverse_dynamics.hpp"
#include "test_support.hpp"

using namespace blochmap;
using blochmap::testing::make_rng;
using blochmap::testing::random_in_ball;

namespace {

std::complex<double> julia_anchor() {
    return to_complex(stereographic_project(fixed_point_c2(), 1.0));
}

std::vector<BlochVector> fig3_ensemble(int depth) {
    std::vector<BlochVector> out;
    for (const BlochVector& p : julia_sample(julia_anchor(), depth).points) {
        out.push_back(shrink_to_purity(p, 0.99));
    }
    return out;
}

// Largest gap from a point of `from` to its nearest neighbor in `to`.
double one_sided_hausdorff(const std::vector<BlochVector>& from,
                           const std::vector<BlochVector>& to) {
    double worst = 0.0;
    for (const BlochVector& p : from) {
        double best = std::numeric_limits<double>::infinity();
        for (const BlochVector& q : to) best = std::min(best, distance(p, q));
        worst = std::max(worst, best);
    }
    return worst;
}

double min_distance_to(const std::vector<BlochVector>& points, const BlochVector& target) {
    double best = std::numeric_limits<double>::infinity();
    for (const BlochVector& p : points) best = std::min(best, distance(p, target));
    return best;
}

} // namespace

TEST_CASE("pre-image examples") {
    const auto pre = invert_bloch_step({0, 0, 1}, BranchChoice::Plus);
    REQUIRE(pre.has_value());
    CHECK(distance(*pre, {1, 0, 0}) < 1e-12);

    // The special branches fix the repelling points that characterize them.
    const BlochVector c1 = fixed_point_c1();
    const auto plus_fix = invert_bloch_step(c1, BranchChoice::Plus);
    REQUIRE(plus_fix.has_value());
    CHECK(distance(*plus_fix, c1) < 1e-9);

    for (const BlochVector& fp : {fixed_point_c5(), fixed_point_c6()}) {
        const auto minus_fix = invert_bloch_step(fp, BranchChoice::Minus);
        REQUIRE(minus_fix.has_value());
        CHECK(distance(*minus_fix, fp) < 1e-9);
    }
}

TEST_CASE("forward composition closes both branches") {
    auto rng = make_rng(21);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const BlochVector target = random_in_ball(rng);
        for (BranchChoice b : {BranchChoice::Plus, BranchChoice::Minus}) {
            const auto pre = invert_bloch_step(target, b);
            REQUIRE(pre.has_value());
            worst = std::max(worst, distance(step_bloch(*pre), target));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("branches are disjoint away from the degenerate axis case") {
    auto rng = make_rng(22);
    for (int k = 0; k < 2000; ++k) {
        BlochVector target = random_in_ball(rng);
        if (std::abs(target.v) < 1e-3) target.v = 0.1;
        const auto plus = invert_bloch_step(target, BranchChoice::Plus);
        const auto minus = invert_bloch_step(target, BranchChoice::Minus);
        REQUIRE(plus.has_value());
        REQUIRE(minus.has_value());
        CHECK(distance(*plus, *minus) > 1e-8);
        CHECK(plus->u > 0.0);
        CHECK(minus->u < 0.0);
    }
}

TEST_CASE("degenerate targets on the u-axis") {
    // w' = 0, v' = 0: the pre-image is unique and both branches agree.
    const auto plus = invert_bloch_step({1, 0, 0}, BranchChoice::Plus);
    const auto minus = invert_bloch_step({1, 0, 0}, BranchChoice::Minus);
    REQUIRE(plus.has_value());
    REQUIRE(minus.has_value());
    CHECK(distance(*plus, *minus) == 0.0);
    CHECK(distance(*plus, {0, 0, 1}) < 1e-15);

    // w' < 0, v' = 0: the branch sign moves to v.
    const auto up = invert_bloch_step({0.0, 0.0, -0.4}, BranchChoice::Plus);
    const auto down = invert_bloch_step({0.0, 0.0, -0.4}, BranchChoice::Minus);
    REQUIRE(up.has_value());
    REQUIRE(down.has_value());
    CHECK(up->u == 0.0);
    CHECK(up->v > 0.0);
    CHECK(down->v < 0.0);
    CHECK(distance(step_bloch(*up), {0.0, 0.0, -0.4}) < 1e-12);
}

TEST_CASE("targets outside the ball have no pre-image") {
    CHECK(!invert_bloch_step({0.9, 0.5, 0.5}, BranchChoice::Plus).has_value());
}

TEST_CASE("invert_rational examples and composition") {
    const auto at_one = invert_rational({1.0, 0.0});
    CHECK(std::abs(at_one.first) < 1e-12);
    CHECK(std::abs(at_one.second) < 1e-12);

    const auto at_zero = invert_rational({0.0, 0.0});
    CHECK(std::abs(at_zero.first - std::complex<double>{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(at_zero.second - std::complex<double>{-1.0, 0.0}) < 1e-12);

    CHECK_THROWS_AS(invert_rational({-1.0, 0.0}), InfinitePreimage);

    auto rng = make_rng(23);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    int checked = 0;
    while (checked < 10000) {
        const std::complex<double> z{coord(rng), coord(rng)};
        if (std::abs(z + 1.0) < 0.1) continue;
        const auto roots = invert_rational(z);
        CHECK(std::abs(rational_step(roots.first) - z) < 1e-12 * (1.0 + std::abs(z)));
        CHECK(std::abs(rational_step(roots.second) - z) < 1e-12 * (1.0 + std::abs(z)));
        ++checked;
    }
}

TEST_CASE("backward orbits from the Julia-vicinity ensemble") {
    const std::vector<BlochVector> starts = fig3_ensemble(6); // 64 starts
    const double p1 = critical_purity();

    for (const BlochVector& start : starts) {
        const BackwardTrace plus = backward_orbit(start, BranchStrategy::all_plus(), 200);
        CHECK(!plus.truncated);
        CHECK(std::abs(plus.steps.back().state_purity - p1) < 1e-4);

        const BackwardTrace minus = backward_orbit(start, BranchStrategy::all_minus(), 500);
        CHECK(!minus.truncated);
        CHECK(minus.steps.back().state_purity > 0.999);
        const BlochVector end = minus.steps.back().point;
        const double to_fixed =
            std::min(distance(end, fixed_point_c5()), distance(end, fixed_point_c6()));
        CHECK(to_fixed < 1e-6);
    }
}

TEST_CASE("random-branch backward orbits respect the purity floor") {
    const std::vector<BlochVector> starts = fig3_ensemble(10); // 1024 starts
    const double p1 = critical_purity();
    double min_purity = 1.0;
    long truncated = 0;
    for (std::size_t k = 0; k < starts.size(); ++k) {
        const BackwardTrace trace =
            backward_orbit(starts[k], BranchStrategy::random_seeded(900 + k), 200);
        if (trace.truncated) ++truncated;
        for (const BackwardStep& step : trace.steps) {
            min_purity = std::min(min_purity, step.state_purity);
        }
    }
    CHECK(min_purity >= p1 - 1e-4);
    // Pre-images of interior states stay inside the ball, so nothing truncates.
    CHECK(truncated == 0);
}

TEST_CASE("backward traces are consistent and reproducible") {
    auto rng = make_rng(24);
    const BlochVector start = shrink_to_purity(random_in_ball(rng), 0.95);

    const BackwardTrace a = backward_orbit(start, BranchStrategy::random_seeded(77), 64);
    const BackwardTrace b = backward_orbit(start, BranchStrategy::random_seeded(77), 64);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t k = 0; k < a.steps.size(); ++k) {
        CHECK(distance(a.steps[k].point, b.steps[k].point) == 0.0);
    }
    for (std::size_t k = 0; k + 1 < a.steps.size(); ++k) {
        CHECK(distance(step_bloch(a.steps[k + 1].point), a.steps[k].point) < 1e-9);
    }
}

TEST_CASE("explicit strategies replay a recorded branch sequence") {
    const std::vector<BranchChoice> seq{BranchChoice::Plus, BranchChoice::Minus,
                                        BranchChoice::Plus};
    const BackwardTrace t =
        backward_orbit({0.2, 0.3, 0.1}, BranchStrategy::explicit_sequence(seq), 3);
    CHECK(t.steps.size() == 4);
    CHECK_THROWS_AS(backward_orbit({0.2, 0.3, 0.1}, BranchStrategy::explicit_sequence(seq), 5),
                    std::invalid_argument);
}

TEST_CASE("julia_sample sizes and purity") {
    const JuliaSample sample = julia_sample(julia_anchor(), 10);
    CHECK(sample.points.size() == 1024);
    for (const BlochVector& p : sample.points) {
        CHECK(std::abs(purity(p) - 1.0) < 1e-10);
    }
}

TEST_CASE("repelling fixed points sit inside a deep julia sample") {
    const JuliaSample sample = julia_sample(julia_anchor(), 14);
    CHECK(sample.points.size() == 16384);
    CHECK(min_distance_to(sample.points, fixed_point_c2()) < 0.01);
    CHECK(min_distance_to(sample.points, fixed_point_c5()) < 0.01);
    CHECK(min_distance_to(sample.points, fixed_point_c6()) < 0.01);
}

TEST_CASE("deeper samples fill in: one-sided Hausdorff gap shrinks") {
    const std::vector<BlochVector> s6 = julia_sample(julia_anchor(), 6).points;
    const std::vector<BlochVector> s8 = julia_sample(julia_anchor(), 8).points;
    const std::vector<BlochVector> s10 = julia_sample(julia_anchor(), 10).points;
    const std::vector<BlochVector> s12 = julia_sample(julia_anchor(), 12).points;
    const double h6 = one_sided_hausdorff(s6, s8);
    const double h8 = one_sided_hausdorff(s8, s10);
    const double h10 = one_sided_hausdorff(s10, s12);
    CHECK(h8 <= h6 + 1e-12);
    CHECK(h10 <= h8 + 1e-12);
    CHECK(h10 < h6);
}

TEST_CASE("shrink_to_purity rescales radially") {
    const BlochVector shrunk = shrink_to_purity({0, 0, 1}, 0.99);
    CHECK(distance(shrunk, {0, 0, std::sqrt(0.98)}) < 1e-15);

    auto rng = make_rng(25);
    for (int k = 0; k < 1000; ++k) {
        const BlochVector x = random_in_ball(rng);
        if (norm(x) < 1e-6) continue;
        const BlochVector y = shrink_to_purity(x, 0.9);
        CHECK(std::abs(purity(y) - 0.9) < 1e-12);
        const double cosine = (x.u * y.u + x.v * y.v + x.w * y.w) / (norm(x) * norm(y));
        CHECK(std::abs(cosine - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(shrink_to_purity({0, 0, 0}, 0.9), ZeroVector);
}

TEST_CASE("preimage_cloud keeps band points reachable from the seeds") {
    const BlochVector c1 = fixed_point_c1();
    const std::vector<BlochVector> seeds{c1};
    const auto cloud = preimage_cloud(seeds, 4, {0.769, 0.770});
    CHECK(min_distance_to(cloud, c1) < 1e-9);

    // Forward-composition oracle: every returned point reaches its seed.
    auto rng = make_rng(26);
    const BlochVector seed = shrink_to_purity(random_in_ball(rng), 0.93);
    const int depth = 5;
    const auto wide = preimage_cloud(std::vector<BlochVector>{seed}, depth, {0.5, 1.0});
    CHECK(wide.size() > 30); // full binary tree minus degeneracies
    for (const BlochVector& p : wide) {
        BlochVector x = p;
        double best = distance(x, seed);
        for (int k = 0; k < depth; ++k) {
            x = step_bloch(x);
            best = std::min(best, distance(x, seed));
        }
        CHECK(best < 1e-8);
    }

    CHECK(preimage_cloud(seeds, 2, {0.999, 1.0}).empty());
}
