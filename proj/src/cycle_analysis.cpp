#include "blochmap/cycle_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace blochmap {

namespace {

constexpr double k_stability_band = 1e-6;   // half-width of the marginal band around 1
constexpr double k_cycle_residual_tol = 1e-10;

Eigen::Vector3d to_vec(const BlochVector& x) { return {x.u, x.v, x.w}; }
BlochVector from_vec(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }

// Residual |M^L(x) - x| together with the composed Jacobian along the orbit.
struct MapEval {
    Eigen::Vector3d residual;
    Eigen::Matrix3d jac;
};

MapEval eval_composed(const BlochVector& x, int length) {
    BlochVector y = x;
    Eigen::Matrix3d jac = Eigen::Matrix3d::Identity();
    for (int l = 0; l < length; ++l) {
        jac = jacobian(y) * jac;
        y = step_bloch(y);
    }
    return {to_vec(y) - to_vec(x), jac};
}

struct NewtonOutcome {
    BlochVector root{};
    double residual = 0.0;
    bool converged = false;
};

NewtonOutcome newton_refine(const BlochVector& seed, int length, const CycleSearchOptions& opt) {
    BlochVector x = seed;
    for (int it = 0; it < opt.max_newton; ++it) {
        const MapEval eval = eval_composed(x, length);
        const double res = eval.residual.norm();
        if (res < opt.newton_tol) {
            return {x, res, true};
        }
        Eigen::FullPivLU<Eigen::Matrix3d> lu(eval.jac - Eigen::Matrix3d::Identity());
        if (!lu.isInvertible()) {
            return {x, res, false};
        }
        const Eigen::Vector3d delta = lu.solve(-eval.residual);
        if (!delta.allFinite()) {
            return {x, res, false};
        }
        x = from_vec(to_vec(x) + opt.damping * delta);
        if (norm2(x) > 2.25) { // escaped far outside the ball; give up on this seed
            return {x, res, false};
        }
    }
    const double res = eval_composed(x, length).residual.norm();
    return {x, res, res < opt.newton_tol};
}

double cycle_residual(const std::vector<BlochVector>& points) {
    double worst = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        const BlochVector next = points[(k + 1) % points.size()];
        worst = std::max(worst, distance(step_bloch(points[k]), next));
    }
    return worst;
}

bool same_cycle(const CycleRecord& a, const std::vector<BlochVector>& points, double radius) {
    if (a.points.size() != points.size()) return false;
    // Match up to cyclic rotation of the points.
    for (std::size_t shift = 0; shift < points.size(); ++shift) {
        double worst = 0.0;
        for (std::size_t k = 0; k < points.size(); ++k) {
            worst = std::max(worst, distance(a.points[k], points[(k + shift) % points.size()]));
        }
        if (worst < radius) return true;
    }
    return false;
}

CycleRecord make_record(std::vector<BlochVector> points) {
    CycleRecord rec;
    rec.length = static_cast<int>(points.size());
    rec.points = std::move(points);
    rec.purities.reserve(rec.points.size());
    for (const BlochVector& p : rec.points) rec.purities.push_back(purity(p));
    rec.residual = cycle_residual(rec.points);
    return rec;
}

// Canonical names following the usual tabulation of this map: C0 the origin,
// C1/C2 the on-plane fixed points ordered by purity, C3/C4 the 2-cycles (pure
// one first), C5/C6 the off-plane pair ordered by the sign of v.
std::string canonical_name(const CycleRecord& rec) {
    if (rec.length == 2) {
        for (const BlochVector& p : rec.points) {
            if (distance(p, {1.0, 0.0, 0.0}) < 1e-3) return "C3";
        }
        return "C4";
    }
    const BlochVector& p = rec.points.front();
    if (norm(p) < 1e-3) return "C0";
    if (std::abs(p.v) > 1e-3) return p.v > 0 ? "C5" : "C6";
    return rec.purities.front() < 0.9 ? "C1" : "C2";
}

// For 2-cycles, rotate so the point with the larger u comes first. This pins
// C3 = (1,0,0) <-> (0,0,1) and C4 = (0.544,0,0) <-> (0,0,0.296) orderings.
void orient_cycle(CycleRecord& rec) {
    if (rec.length == 2 && rec.points[1].u > rec.points[0].u) {
        std::swap(rec.points[0], rec.points[1]);
        std::swap(rec.purities[0], rec.purities[1]);
    }
}

} // namespace

Eigen::Matrix3d jacobian(const BlochVector& x) {
    const double d = 1.0 + x.w * x.w;
    const double d2 = d * d;
    Eigen::Matrix3d j;
    j << 0.0, 0.0, 2.0 * (1.0 - x.w * x.w) / d2,
        -2.0 * x.v / d, -2.0 * x.u / d, 4.0 * x.u * x.v * x.w / d2,
        2.0 * x.u / d, -2.0 * x.v / d, -2.0 * x.w * (x.u * x.u - x.v * x.v) / d2;
    return j;
}

const char* stability_name(Stability s) {
    switch (s) {
        case Stability::Attractive: return "attractive";
        case Stability::Repelling: return "repelling";
        case Stability::Saddle: return "saddle";
        case Stability::Marginal: return "marginal";
    }
    return "unknown";
}

CycleRecord classify_stability(CycleRecord record) {
    if (record.points.empty()) {
        throw std::invalid_argument("classify_stability: empty cycle");
    }
    if (record.residual >= k_cycle_residual_tol) {
        throw std::invalid_argument("classify_stability: cycle residual too large");
    }
    Eigen::Matrix3d jac = Eigen::Matrix3d::Identity();
    for (const BlochVector& p : record.points) {
        jac = jacobian(p) * jac;
    }
    const Eigen::Vector3cd eigs = Eigen::EigenSolver<Eigen::Matrix3d>(jac, false).eigenvalues();
    std::array<double, 3> mags{std::abs(eigs[0]), std::abs(eigs[1]), std::abs(eigs[2])};
    std::sort(mags.begin(), mags.end(), std::greater<>());
    record.multipliers = mags;

    bool marginal = false, all_below = true, all_above = true;
    for (double m : mags) {
        if (std::abs(m - 1.0) < k_stability_band) marginal = true;
        all_below = all_below && m < 1.0;
        all_above = all_above && m > 1.0;
    }
    record.stability = marginal       ? Stability::Marginal
                       : all_below    ? Stability::Attractive
                       : all_above    ? Stability::Repelling
                                      : Stability::Saddle;
    return record;
}

CycleSearchResult find_cycles(int length, const CycleSearchOptions& options) {
    if (length != 1 && length != 2) {
        throw std::invalid_argument("find_cycles: only lengths 1 and 2 are supported");
    }
    if (options.grid < 2) {
        throw std::invalid_argument("find_cycles: grid must have at least two points per axis");
    }

    CycleSearchResult result;
    const int n = options.grid;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const BlochVector seed{-1.0 + 2.0 * i / (n - 1), -1.0 + 2.0 * j / (n - 1),
                                       -1.0 + 2.0 * k / (n - 1)};
                if (!in_ball(seed)) continue;
                ++result.seeds_total;

                const NewtonOutcome outcome = newton_refine(seed, length, options);
                if (!outcome.converged || !in_ball(outcome.root, 1e-9)) {
                    ++result.seeds_rejected;
                    continue;
                }
                ++result.seeds_converged;

                std::vector<BlochVector> points{outcome.root};
                if (length == 2) {
                    // Roots of M∘M that are fixed points of M are not 2-cycles.
                    if (distance(step_bloch(outcome.root), outcome.root) < options.dedup_radius) {
                        continue;
                    }
                    points.push_back(step_bloch(outcome.root));
                }
                const bool known =
                    std::any_of(result.records.begin(), result.records.end(),
                                [&](const CycleRecord& r) {
                                    return same_cycle(r, points, options.dedup_radius);
                                });
                if (!known) {
                    result.records.push_back(make_record(std::move(points)));
                }
            }
        }
    }

    for (CycleRecord& rec : result.records) {
        orient_cycle(rec);
        rec = classify_stability(std::move(rec));
        rec.name = canonical_name(rec);
    }
    std::sort(result.records.begin(), result.records.end(),
              [](const CycleRecord& a, const CycleRecord& b) { return a.name < b.name; });
    return result;
}

const std::vector<CycleRecord>& reference_cycles() {
    static const std::vector<CycleRecord> table = [] {
        const CycleSearchOptions opt{};
        // Coarse guesses good to three decimals; Newton sharpens them to full
        // double precision so that fixed-point residual tests hold.
        const std::vector<std::pair<BlochVector, int>> guesses = {
            {{0.0, 0.0, 0.0}, 1},       {{0.639, 0.0, 0.361}, 1}, {{0.839, 0.0, 0.544}, 1},
            {{1.0, 0.0, 0.0}, 2},       {{0.544, 0.0, 0.0}, 2},   {{-0.544, 0.786, -0.296}, 1},
            {{-0.544, -0.786, -0.296}, 1},
        };
        std::vector<CycleRecord> out;
        for (const auto& [seed, length] : guesses) {
            const NewtonOutcome outcome = newton_refine(seed, length, opt);
            if (!outcome.converged) {
                throw std::logic_error("reference_cycles: refinement failed to converge");
            }
            std::vector<BlochVector> points{outcome.root};
            if (length == 2) points.push_back(step_bloch(outcome.root));
            CycleRecord rec = make_record(std::move(points));
            orient_cycle(rec);
            rec = classify_stability(std::move(rec));
            rec.name = canonical_name(rec);
            out.push_back(std::move(rec));
        }
        std::sort(out.begin(), out.end(),
                  [](const CycleRecord& a, const CycleRecord& b) { return a.name < b.name; });
        return out;
    }();
    return table;
}

const CycleRecord& reference_cycle(const std::string& name) {
    for (const CycleRecord& rec : reference_cycles()) {
        if (rec.name == name) return rec;
    }
    throw std::invalid_argument("reference_cycle: unknown name " + name);
}

BlochVector fixed_point_c1() { return reference_cycle("C1").points.front(); }
BlochVector fixed_point_c2() { return reference_cycle("C2").points.front(); }
BlochVector fixed_point_c5() { return reference_cycle("C5").points.front(); }
BlochVector fixed_point_c6() { return reference_cycle("C6").points.front(); }

double critical_purity() { return reference_cycle("C1").purities.front(); }

} // namespace blochmap
