#include <doctest.h>

#include <cmath>
#include <complex>

#include "blochmap/core_map.hpp"
#include "test_support.hpp"

using namespace blochmap;
using blochmap::testing::make_rng;
using blochmap::testing::random_in_ball;
using blochmap::testing::random_in_plane;
using blochmap::testing::random_on_sphere;

namespace {

double matrix_diff(const DensityMatrix& a, const DensityMatrix& b) {
    return std::max({std::abs(a.a00 - b.a00), std::abs(a.a01 - b.a01), std::abs(a.a10 - b.a10),
                     std::abs(a.a11 - b.a11)});
}

// Chordal metric on the Riemann sphere; the right yardstick when images can
// wander toward the projection pole.
double chordal(const std::complex<double>& a, const std::complex<double>& b) {
    return 2.0 * std::abs(a - b) /
           std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

} // namespace

TEST_CASE("bloch_to_density matches the parameterization") {
    const DensityMatrix mixed = bloch_to_density({0.0, 0.0, 0.0});
    CHECK(std::abs(mixed.a00 - 0.5) < 1e-15);
    CHECK(std::abs(mixed.a11 - 0.5) < 1e-15);
    CHECK(std::abs(mixed.a01) < 1e-15);

    const DensityMatrix ket0 = bloch_to_density({0.0, 0.0, 1.0});
    CHECK(std::abs(ket0.a00 - 1.0) < 1e-15);
    CHECK(std::abs(ket0.a11) < 1e-15);

    const DensityMatrix c1ish = bloch_to_density({0.639, 0.0, 0.361});
    CHECK(std::abs(c1ish.a00 - 0.6805) < 1e-12);
    CHECK(std::abs(c1ish.a01 - 0.3195) < 1e-12);
    CHECK(std::abs(c1ish.a10 - 0.3195) < 1e-12);
    CHECK(std::abs(c1ish.a11 - 0.3195) < 1e-12);

    CHECK_THROWS_AS(bloch_to_density({1.1, 0.0, 0.0}), BallViolation);
}

TEST_CASE("density_to_bloch inverts bloch_to_density") {
    CHECK(distance(density_to_bloch(bloch_to_density({0, 0, 0})), {0, 0, 0}) < 1e-15);

    const DensityMatrix plus{{0.5, 0.0}, {0.5, 0.0}, {0.5, 0.0}, {0.5, 0.0}};
    CHECK(distance(density_to_bloch(plus), {1.0, 0.0, 0.0}) < 1e-15);

    auto rng = make_rng(11);
    double worst = 0.0;
    for (int k = 0; k < 100000; ++k) {
        const BlochVector x = random_in_ball(rng);
        worst = std::max(worst, distance(density_to_bloch(bloch_to_density(x)), x));
    }
    CHECK(worst < 1e-12);

    DensityMatrix bad{{0.5, 0.0}, {0.5, 0.1}, {0.5, 0.1}, {0.5, 0.0}};
    CHECK_THROWS_AS(density_to_bloch(bad), InvalidDensityMatrix);
    DensityMatrix off_trace{{0.6, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.6, 0.0}};
    CHECK_THROWS_AS(density_to_bloch(off_trace), InvalidDensityMatrix);
}

TEST_CASE("step_density on basis states") {
    const DensityMatrix after = step_density(bloch_to_density({0.0, 0.0, 1.0}));
    CHECK(std::abs(after.a00 - 0.5) < 1e-15);
    CHECK(std::abs(after.a01 - 0.5) < 1e-15);
    CHECK(std::abs(after.a10 - 0.5) < 1e-15);
    CHECK(std::abs(after.a11 - 0.5) < 1e-15);

    const DensityMatrix fixed = step_density(bloch_to_density({0.0, 0.0, 0.0}));
    CHECK(matrix_diff(fixed, bloch_to_density({0.0, 0.0, 0.0})) < 1e-15);
}

TEST_CASE("matrix and Bloch forms of the step agree") {
    auto rng = make_rng(12);
    double worst = 0.0;
    for (int k = 0; k < 100000; ++k) {
        const BlochVector x = random_in_ball(rng);
        const BlochVector via_matrix = density_to_bloch(step_density(bloch_to_density(x)));
        worst = std::max(worst, distance(via_matrix, step_bloch(x)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("step_bloch reproduces the tabulated cycles to 3 decimals") {
    CHECK(distance(step_bloch({1, 0, 0}), {0, 0, 1}) < 1e-15);
    CHECK(distance(step_bloch({0, 0, 1}), {1, 0, 0}) < 1e-15);

    const BlochVector c4a{0.544, 0.0, 0.0};
    const BlochVector c4b = step_bloch(c4a);
    CHECK(distance(c4b, {0.0, 0.0, 0.296}) < 5e-4);
    CHECK(distance(step_bloch(c4b), c4a) < 5e-4);

    const BlochVector c5{-0.544, 0.786, -0.296};
    CHECK(distance(step_bloch(c5), c5) < 5e-4);
}

TEST_CASE("orbit from (0.3,0,0) falls into the mixed fixed point") {
    BlochVector x{0.3, 0.0, 0.0};
    for (int k = 0; k < 200; ++k) x = step_bloch(x);
    CHECK(norm(x) < 1e-8);
}

TEST_CASE("purity values") {
    CHECK(purity({0, 0, 0}) == 0.5);
    CHECK(purity({0, 0, 1}) == 1.0);
    CHECK(std::abs(purity({0.639, 0.0, 0.361}) - 0.769) < 5e-4);
}

TEST_CASE("ball preservation over random samples") {
    auto rng = make_rng(13);
    double worst = 0.0;
    for (int k = 0; k < 1000000; ++k) {
        worst = std::max(worst, norm(step_bloch(random_in_ball(rng))));
    }
    CHECK(worst <= 1.0 + 1e-15);
}

TEST_CASE("purity one is preserved") {
    auto rng = make_rng(14);
    for (int k = 0; k < 20000; ++k) {
        const BlochVector x = random_on_sphere(rng);
        CHECK(std::abs(purity(step_bloch(x)) - 1.0) < 1e-12);
    }
}

TEST_CASE("the v = 0 plane is exactly invariant") {
    auto rng = make_rng(15);
    for (int k = 0; k < 100000; ++k) {
        const BlochVector x = random_in_plane(rng);
        CHECK(step_bloch(x).v == 0.0);
    }
}

TEST_CASE("plane orbits reach the first quadrant in two steps") {
    auto rng = make_rng(16);
    for (int k = 0; k < 100000; ++k) {
        const BlochVector two = step_bloch(step_bloch(random_in_plane(rng)));
        CHECK(two.u >= -1e-12);
        CHECK(two.w >= -1e-12);
    }
}

TEST_CASE("rational_step basics") {
    CHECK(std::abs(rational_step(std::complex<double>{0.0, 0.0}) - std::complex<double>{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(rational_step(std::complex<double>{1.0, 0.0}) - std::complex<double>{0.0, 0.0}) < 1e-15);
    CHECK_THROWS_AS(rational_step(std::complex<double>{0.0, 1.0}), PoleInput);

    const ExtendedComplex inf = rational_step(ExtendedComplex{{0.0, 1.0}, false});
    CHECK(inf.is_infinity);
    const ExtendedComplex back = rational_step(ExtendedComplex::infinity());
    CHECK(!back.is_infinity);
    CHECK(std::abs(back.value - std::complex<double>{-1.0, 0.0}) < 1e-15);
}

TEST_CASE("rational fixed point from the tabulated pure on-plane state") {
    // Project the rounded coordinates through the P = 1 chart.
    const double z0 = 0.839 / (1.0 + 0.544);
    CHECK(std::abs(z0 - 0.5434) < 1e-3);
    CHECK(std::abs(rational_step(std::complex<double>{z0, 0.0}) - std::complex<double>{z0, 0.0}) < 2e-3);
}

TEST_CASE("rational_step is the projected Bloch step on pure states") {
    auto rng = make_rng(17);
    int checked = 0;
    while (checked < 10000) {
        const BlochVector x = random_on_sphere(rng);
        if (1.0 + x.w < 1e-6) continue; // projection pole
        const BlochVector y = step_bloch(x);
        if (1.0 + y.w < 1e-6) continue;
        const std::complex<double> z = to_complex(stereographic_project(x, 1.0));
        if (std::abs(std::complex<double>{1.0, 0.0} + z * z) < 1e-9) continue;
        const std::complex<double> via_map = to_complex(stereographic_project(y, 1.0));
        CHECK(chordal(rational_step(z), via_map) < 1e-10);
        ++checked;
    }
}

TEST_CASE("stereographic projection and its inverse") {
    const ProjectedPoint origin = stereographic_project({0, 0, 1}, 1.0);
    CHECK(std::abs(origin.x) < 1e-15);
    CHECK(std::abs(origin.y) < 1e-15);

    const ProjectedPoint unit = stereographic_project({1, 0, 0}, 1.0);
    CHECK(std::abs(unit.x - 1.0) < 1e-15);

    const double r = std::sqrt(0.8);
    const ProjectedPoint p09 = stereographic_project({r, 0.0, 0.0}, 0.9);
    CHECK(std::abs(p09.x - 1.0) < 1e-12);
    CHECK(std::abs(p09.y) < 1e-15);

    CHECK(distance(inverse_project({0, 0}, 1.0), {0, 0, 1}) < 1e-15);
    CHECK(distance(inverse_project({1, 0}, 1.0), {1, 0, 0}) < 1e-15);

    CHECK_THROWS_AS(stereographic_project({0, 0, -1}, 1.0), PoleProjection);
    CHECK_THROWS_AS(stereographic_project({0, 0, 1}, 0.8), PurityMismatch);
}

TEST_CASE("projection round-trip across purities") {
    auto rng = make_rng(18);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    std::uniform_real_distribution<double> pick(0.501, 1.0);
    double worst_plane = 0.0, worst_purity = 0.0;
    for (int k = 0; k < 100000; ++k) {
        const double purity_level = pick(rng);
        const ProjectedPoint p{coord(rng), coord(rng)};
        const BlochVector x = inverse_project(p, purity_level);
        worst_purity = std::max(worst_purity, std::abs(purity(x) - purity_level));
        const ProjectedPoint back = stereographic_project(x, purity_level);
        worst_plane = std::max({worst_plane, std::abs(back.x - p.x), std::abs(back.y - p.y)});
    }
    CHECK(worst_purity < 1e-12);
    CHECK(worst_plane < 1e-10);
}
