#include "blochmap/core_map.hpp"

#include <string>

namespace blochmap {

namespace {

void require_in_ball(const BlochVector& x, const char* what) {
    if (!in_ball(x)) {
        throw BallViolation(std::string(what) + ": point outside the Bloch ball, |x|^2 = " +
                            std::to_string(norm2(x)));
    }
}

} // namespace

DensityMatrix bloch_to_density(const BlochVector& x) {
    require_in_ball(x, "bloch_to_density");
    return {
        {0.5 * (1.0 + x.w), 0.0},
        {0.5 * x.u, -0.5 * x.v},
        {0.5 * x.u, 0.5 * x.v},
        {0.5 * (1.0 - x.w), 0.0},
    };
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
    if (std::abs(rho.a01 - std::conj(rho.a10)) > k_matrix_tol ||
        std::abs(rho.a00.imag()) > k_matrix_tol || std::abs(rho.a11.imag()) > k_matrix_tol) {
        throw InvalidDensityMatrix("density_to_bloch: matrix is not Hermitian");
    }
    if (std::abs(rho.a00 + rho.a11 - 1.0) > k_matrix_tol) {
        throw InvalidDensityMatrix("density_to_bloch: trace differs from 1");
    }
    const BlochVector x{rho.a10.real() + rho.a01.real(), rho.a10.imag() - rho.a01.imag(),
                        rho.a00.real() - rho.a11.real()};
    // Positive semidefiniteness: the smaller eigenvalue is (1 - |x|)/2.
    if (norm(x) > 1.0 + 4.0 * k_matrix_tol) {
        throw InvalidDensityMatrix("density_to_bloch: matrix is not positive semidefinite");
    }
    return x;
}

DensityMatrix step_density(const DensityMatrix& rho) {
    // Elementwise square, then normalize. The diagonal of a valid state is real
    // with squares summing to at least 1/2, so the trace cannot vanish.
    const std::complex<double> s00 = rho.a00 * rho.a00;
    const std::complex<double> s01 = rho.a01 * rho.a01;
    const std::complex<double> s10 = rho.a10 * rho.a10;
    const std::complex<double> s11 = rho.a11 * rho.a11;
    const std::complex<double> tr = s00 + s11;
    if (std::abs(tr) <= 1e-300) {
        throw NormalizationUnderflow("step_density: Tr(rho .* rho) vanished");
    }
    const std::complex<double> b00 = s00 / tr, b01 = s01 / tr, b10 = s10 / tr, b11 = s11 / tr;
    // Conjugation by the Hadamard gate, written out entrywise.
    return {
        0.5 * (b00 + b01 + b10 + b11),
        0.5 * (b00 - b01 + b10 - b11),
        0.5 * (b00 + b01 - b10 - b11),
        0.5 * (b00 - b01 - b10 + b11),
    };
}

ProjectedPoint stereographic_project(const BlochVector& x, double purity_level) {
    if (purity_level <= 0.5 || purity_level > 1.0 + k_ball_tol) {
        throw PurityMismatch("stereographic_project: purity level outside (0.5, 1]");
    }
    if (std::abs(purity(x) - purity_level) > 1e-9) {
        throw PurityMismatch("stereographic_project: point does not lie on the requested sphere");
    }
    const double denom = std::sqrt(2.0 * purity_level - 1.0) + x.w;
    if (denom <= 1e-12) {
        throw PoleProjection("stereographic_project: point at or beyond the projection pole");
    }
    return {x.u / denom, x.v / denom};
}

BlochVector inverse_project(const ProjectedPoint& p, double purity_level) {
    if (purity_level <= 0.5 || purity_level > 1.0 + k_ball_tol) {
        throw PurityMismatch("inverse_project: purity level outside (0.5, 1]");
    }
    const double r = std::sqrt(2.0 * purity_level - 1.0);
    const double rho2 = p.x * p.x + p.y * p.y;
    const double s = 2.0 * r / (1.0 + rho2);
    return {s * p.x, s * p.y, s - r};
}

std::complex<double> rational_step(const std::complex<double>& z) {
    const std::complex<double> denom = 1.0 + z * z;
    if (denom == std::complex<double>{0.0, 0.0}) {
        throw PoleInput("rational_step: pole at z = ±i");
    }
    return (1.0 - z * z) / denom;
}

ExtendedComplex rational_step(const ExtendedComplex& z) {
    if (z.is_infinity) {
        return {{-1.0, 0.0}, false};
    }
    const std::complex<double> denom = 1.0 + z.value * z.value;
    if (denom == std::complex<double>{0.0, 0.0}) {
        return ExtendedComplex::infinity();
    }
    return {(1.0 - z.value * z.value) / denom, false};
}

} // namespace blochmap
