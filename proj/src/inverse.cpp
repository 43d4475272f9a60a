#include <erloss/inverse.hpp>

#include <cmath>
#include <string>

namespace erloss {

BlockingTarget::BlockingTarget(double probability) : value_(probability) {
    if (!std::isfinite(probability) || probability <= 0.0 ||
        probability > 1.0) {
        throw std::domain_error("blocking target must be in (0, 1], got " +
                                std::to_string(probability));
    }
}

long long min_servers(OfferedLoad load, BlockingTarget target) {
    const double goal = target.value();
    if (erlang_b_int(0, load).value <= goal) return 0;

    // Grow until B(hi) <= goal; B(lo) > goal is maintained throughout.
    long long lo = 0;
    long long hi = 1;
    int growth_steps = 0;
    while (erlang_b_int(hi, load).value > goal) {
        lo = hi;
        if (hi > (1LL << 61)) {
            throw numeric_error("min_servers bracket growth exceeded range");
        }
        hi *= 2;
        if (++growth_steps > 120) {
            throw numeric_error("min_servers iteration cap exceeded");
        }
    }
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        if (erlang_b_int(mid, load).value <= goal) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

double solve_servers_real(OfferedLoad load, BlockingTarget target,
                          SolveOptions opts, QuadratureConfig quad) {
    if (!(opts.x_tol > 0.0) || opts.max_iter < 1) {
        throw std::domain_error("invalid solve options");
    }
    if (target.value() == 1.0) return 0.0;

    const long long upper = min_servers(load, target);  // >= 1 here
    double lo = static_cast<double>(upper - 1);          // B(lo) > target
    double hi = static_cast<double>(upper);              // B(hi) <= target

    // The continuation can land exactly on the target at an endpoint.
    if (erlang_b_real(lo, load, quad).value <= target.value()) return lo;

    int iterations = 0;
    while (hi - lo > opts.x_tol) {
        if (++iterations > opts.max_iter) {
            throw numeric_error("solve_servers_real iteration cap exceeded");
        }
        const double mid = 0.5 * (lo + hi);
        if (erlang_b_real(mid, load, quad).value <= target.value()) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

OfferedLoad solve_traffic(long long n, BlockingTarget target,
                          SolveOptions opts) {
    if (n < 1) throw std::domain_error("solve_traffic requires n >= 1");
    if (target.value() >= 1.0) {
        throw std::domain_error("solve_traffic requires target < 1");
    }
    if (!(opts.x_tol > 0.0) || opts.max_iter < 1 ||
        !(opts.bracket_growth > 1.0)) {
        throw std::domain_error("invalid solve options");
    }

    const double goal = target.value();
    auto b_at = [&](double lambda) {
        return erlang_b_int(n, OfferedLoad(lambda)).value;
    };

    // For n = 1 the exact solution is goal/(1 - goal); it seeds the
    // bracket for every n.
    const double seed = goal * static_cast<double>(n) / (1.0 - goal);
    double lo = seed / opts.bracket_growth;
    double hi = seed * opts.bracket_growth;
    int expansions = 0;
    while (b_at(lo) > goal) {
        hi = lo;
        lo /= opts.bracket_growth;
        if (++expansions > opts.max_iter || lo < 1e-300) {
            throw numeric_error("solve_traffic bracket expansion failed");
        }
    }
    while (b_at(hi) < goal) {
        lo = hi;
        hi *= opts.bracket_growth;
        if (++expansions > opts.max_iter || hi > 1e300) {
            throw numeric_error("solve_traffic bracket expansion failed");
        }
    }

    int iterations = 0;
    while (hi - lo > opts.x_tol * lo) {
        if (++iterations > opts.max_iter) {
            throw numeric_error("solve_traffic iteration cap exceeded");
        }
        const double mid = 0.5 * (lo + hi);
        if (b_at(mid) < goal) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return OfferedLoad(0.5 * (lo + hi));
}

}  // namespace erloss
