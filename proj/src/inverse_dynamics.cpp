#include "blochmap/inverse_dynamics.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace blochmap {

namespace {

// Pre-images outside the ball by more than this are not states.
constexpr double k_preimage_ball_tol = 1e-9;

} // namespace

std::optional<BlochVector> invert_bloch_step(const BlochVector& target, BranchChoice branch) {
    const double up = target.u, vp = target.v, wp = target.w;
    if (std::abs(up) > 1.0 + k_ball_tol) {
        return std::nullopt; // the w-quadratic has no real root
    }

    // Root of u'w² - 2w + u' = 0 with |w| <= 1, written to stay stable as u' -> 0.
    const double c = std::min(1.0, std::abs(up));
    const double w = up / (1.0 + std::sqrt(1.0 - c * c));
    const double d = 1.0 + w * w;

    double u, v;
    if (vp == 0.0) {
        // On-axis targets: s = D·max(w',0) exactly; for w' <= 0 the sign
        // ambiguity moves to v and the pre-image leaves the v = 0 plane.
        if (wp > 0.0) {
            u = std::sqrt(d * wp);
            if (branch == BranchChoice::Minus) u = -u;
            v = 0.0;
        } else {
            u = 0.0;
            v = std::sqrt(-wp * d);
            if (branch == BranchChoice::Minus) v = -v;
        }
    } else {
        const double m = std::sqrt(wp * wp + vp * vp);
        const double s = std::max(0.0, 0.5 * d * (wp + m)); // = u², strictly positive here
        u = std::sqrt(s);
        if (branch == BranchChoice::Minus) u = -u;
        v = -vp * d / (2.0 * u);
    }

    const BlochVector pre{u, v, w};
    if (norm(pre) > 1.0 + k_preimage_ball_tol) {
        return std::nullopt;
    }
    return pre;
}

std::pair<std::complex<double>, std::complex<double>> invert_rational(
    const std::complex<double>& z) {
    const std::complex<double> denom = 1.0 + z;
    if (denom == std::complex<double>{0.0, 0.0}) {
        throw InfinitePreimage("invert_rational: z = -1 has its pre-image at infinity");
    }
    const std::complex<double> root = std::sqrt((1.0 - z) / denom);
    return {root, -root};
}

BackwardTrace backward_orbit(const BlochVector& start, const BranchStrategy& strategy, int n) {
    if (n < 1) {
        throw std::invalid_argument("backward_orbit: need at least one step");
    }
    if (!in_ball(start)) {
        throw BallViolation("backward_orbit: start outside the Bloch ball");
    }
    if (strategy.kind == BranchStrategy::Kind::Explicit &&
        static_cast<int>(strategy.sequence.size()) < n) {
        throw std::invalid_argument("backward_orbit: explicit sequence shorter than orbit");
    }

    BackwardTrace trace;
    trace.requested_steps = n;
    trace.steps.reserve(static_cast<std::size_t>(n) + 1);
    trace.steps.push_back({0, start, purity(start)});

    std::mt19937_64 rng(strategy.seed);
    BlochVector cur = start;
    for (int k = 1; k <= n; ++k) {
        BranchChoice b;
        switch (strategy.kind) {
            case BranchStrategy::Kind::AllPlus: b = BranchChoice::Plus; break;
            case BranchStrategy::Kind::AllMinus: b = BranchChoice::Minus; break;
            case BranchStrategy::Kind::RandomSeeded:
                b = (rng() & 1u) ? BranchChoice::Plus : BranchChoice::Minus;
                break;
            case BranchStrategy::Kind::Explicit:
            default: b = strategy.sequence[static_cast<std::size_t>(k) - 1]; break;
        }
        const auto pre = invert_bloch_step(cur, b);
        if (!pre) {
            trace.truncated = true;
            break;
        }
        cur = *pre;
        trace.steps.push_back({k, cur, purity(cur)});
    }
    return trace;
}

JuliaSample julia_sample(const std::complex<double>& seed_point, int depth) {
    if (depth < 0 || depth > 20) {
        throw std::invalid_argument("julia_sample: depth must lie in [0, 20]");
    }
    std::vector<BlochVector> level{inverse_project(from_complex(seed_point), 1.0)};
    for (int d = 0; d < depth; ++d) {
        std::vector<BlochVector> next;
        next.reserve(level.size() * 2);
        for (const BlochVector& p : level) {
            for (BranchChoice b : {BranchChoice::Plus, BranchChoice::Minus}) {
                if (auto q = invert_bloch_step(p, b)) {
                    next.push_back(*q);
                }
            }
        }
        // Pruned branches (never hit on the sphere in practice) are compensated
        // by expanding pre-images of the surviving siblings one level deeper.
        const std::size_t want = std::size_t{1} << (d + 1);
        std::size_t cursor = 0;
        while (next.size() < want && cursor < next.size()) {
            for (BranchChoice b : {BranchChoice::Plus, BranchChoice::Minus}) {
                if (next.size() >= want) break;
                if (auto q = invert_bloch_step(next[cursor], b)) {
                    next.push_back(*q);
                }
            }
            ++cursor;
        }
        level = std::move(next);
    }
    return {std::move(level), depth};
}

BlochVector shrink_to_purity(const BlochVector& x, double target_purity) {
    if (target_purity <= 0.5 || target_purity > 1.0 + k_ball_tol) {
        throw std::invalid_argument("shrink_to_purity: purity must lie in (0.5, 1]");
    }
    const double r = norm(x);
    if (r == 0.0) {
        throw ZeroVector("shrink_to_purity: zero vector has no direction");
    }
    const double scale = std::sqrt(2.0 * target_purity - 1.0) / r;
    return {x.u * scale, x.v * scale, x.w * scale};
}

std::vector<BlochVector> preimage_cloud(std::span<const BlochVector> seeds, int depth,
                                        PurityBand band) {
    if (depth < 0 || depth > 16) {
        throw std::invalid_argument("preimage_cloud: depth must lie in [0, 16]");
    }
    std::vector<BlochVector> out;
    struct Node {
        BlochVector point;
        int remaining;
    };
    std::vector<Node> stack;
    for (const BlochVector& seed : seeds) {
        stack.push_back({seed, depth});
        while (!stack.empty()) {
            const Node node = stack.back();
            stack.pop_back();
            if (band.contains(purity(node.point))) {
                out.push_back(node.point);
            }
            if (node.remaining == 0) continue;
            const auto plus = invert_bloch_step(node.point, BranchChoice::Plus);
            const auto minus = invert_bloch_step(node.point, BranchChoice::Minus);
            if (plus) stack.push_back({*plus, node.remaining - 1});
            if (minus && !(plus && plus->u == minus->u && plus->v == minus->v &&
                           plus->w == minus->w)) {
                stack.push_back({*minus, node.remaining - 1});
            }
        }
    }
    return out;
}

} // namespace blochmap
