// core_map.hpp — Bloch-ball state representations, the forward nonlinear map,
// purity, the pure-state rational map, and stereographic projections.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace blochmap {

// Membership tolerance for the closed Bloch ball, applied to the squared norm.
// Absorbs rounding from projection round-trips.
inline constexpr double k_ball_tol = 1e-12;
// Tolerance for density-matrix invariants (Hermiticity, unit trace).
inline constexpr double k_matrix_tol = 1e-12;

struct MapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BallViolation : MapError {
    using MapError::MapError;
};
struct InvalidDensityMatrix : MapError {
    using MapError::MapError;
};
struct NormalizationUnderflow : MapError {
    using MapError::MapError;
};
struct PoleInput : MapError {
    using MapError::MapError;
};
struct PoleProjection : MapError {
    using MapError::MapError;
};
struct PurityMismatch : MapError {
    using MapError::MapError;
};

// A point (u,v,w) of the closed Bloch ball.
struct BlochVector {
    double u = 0.0;
    double v = 0.0;
    double w = 0.0;
};

inline double norm2(const BlochVector& x) noexcept {
    return x.u * x.u + x.v * x.v + x.w * x.w;
}

inline double norm(const BlochVector& x) noexcept { return std::sqrt(norm2(x)); }

inline double distance(const BlochVector& a, const BlochVector& b) noexcept {
    const double du = a.u - b.u, dv = a.v - b.v, dw = a.w - b.w;
    return std::sqrt(du * du + dv * dv + dw * dw);
}

// P = (1 + u² + v² + w²)/2; 1/2 for the maximally mixed state, 1 on the sphere.
inline double purity(const BlochVector& x) noexcept { return 0.5 * (1.0 + norm2(x)); }

inline bool in_ball(const BlochVector& x, double tol = k_ball_tol) noexcept {
    return norm2(x) <= 1.0 + tol;
}

// One protocol step in Bloch coordinates:
//   u' = 2w/(1+w²),  v' = -2uv/(1+w²),  w' = (u²-v²)/(1+w²).
// Total on the ball; the denominator never drops below 1. The v = 0 plane is
// exactly invariant because v' carries a factor v.
inline BlochVector step_bloch(const BlochVector& x) noexcept {
    const double d = 1.0 + x.w * x.w;
    return {2.0 * x.w / d, -2.0 * x.u * x.v / d, (x.u * x.u - x.v * x.v) / d};
}

// 2x2 density matrix in the computational basis, row-major entries.
struct DensityMatrix {
    std::complex<double> a00{};
    std::complex<double> a01{};
    std::complex<double> a10{};
    std::complex<double> a11{};
};

// rho = ((1+w, u-iv), (u+iv, 1-w)) / 2. Rejects points outside the ball.
DensityMatrix bloch_to_density(const BlochVector& x);

// Inverse of bloch_to_density. Rejects non-Hermitian input, trace != 1, or
// matrices that are not positive semidefinite within tolerance.
BlochVector density_to_bloch(const DensityMatrix& rho);

// One protocol step at the matrix level: U_H (rho .* rho) / Tr(rho .* rho) U_H',
// where .* squares each entry in the computational basis.
DensityMatrix step_density(const DensityMatrix& rho);

// Equatorial-plane coordinates of the stereographic projection taken from the
// sphere's south pole. At P = 1 these relate to the complex coordinate z of the
// pure-state parameterization by x = Re z, y = -Im z.
struct ProjectedPoint {
    double x = 0.0;
    double y = 0.0;
};

inline std::complex<double> to_complex(const ProjectedPoint& p) noexcept {
    return {p.x, -p.y};
}
inline ProjectedPoint from_complex(const std::complex<double>& z) noexcept {
    return {z.real(), -z.imag()};
}

// (x, y) = (u, v) / (sqrt(2P-1) + w). Requires purity(x) = purity_level to 1e-9;
// throws PoleProjection when the denominator vanishes (the projection pole).
ProjectedPoint stereographic_project(const BlochVector& x, double purity_level);

// Inverse of stereographic_project onto the sphere of the given purity.
// Defined for every finite point; purity_level must lie in (0.5, 1].
BlochVector inverse_project(const ProjectedPoint& p, double purity_level);

// Pure-state dynamics in the plane coordinate: f(z) = (1 - z²)/(1 + z²).
// Throws PoleInput at z = ±i where the denominator vanishes exactly.
std::complex<double> rational_step(const std::complex<double>& z);

// Extended complex value with a distinguished point at infinity. Infinity maps
// to -1 under the rational step; the poles ±i map to infinity.
struct ExtendedComplex {
    std::complex<double> value{};
    bool is_infinity = false;

    static ExtendedComplex infinity() { return {{0.0, 0.0}, true}; }
};

ExtendedComplex rational_step(const ExtendedComplex& z);

} // namespace blochmap
