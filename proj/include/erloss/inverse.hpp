#ifndef ERLOSS_INVERSE_HPP
#define ERLOSS_INVERSE_HPP

#include <erloss/continuation.hpp>
#include <erloss/core.hpp>

namespace erloss {

// Grade-of-service target for the dimensioning solvers, in (0, 1].
class BlockingTarget {
public:
    explicit BlockingTarget(double probability);
    double value() const { return value_; }

private:
    double value_;
};

struct SolveOptions {
    double x_tol = 1e-9;
    int max_iter = 200;
    double bracket_growth = 2.0;
};

// Smallest integer n >= 0 with B(n, lambda) <= target.  Exponential
// bracket growth followed by binary search over the monotone sequence;
// always attainable since B(n, lambda) -> 0 as n grows.
long long min_servers(OfferedLoad load, BlockingTarget target);

// The unique real x >= 0 with B(x, lambda) = target (target < 1; exactly
// 0 is returned for target = 1).  Brackets between min_servers - 1 and
// min_servers, then bisects to opts.x_tol.
double solve_servers_real(OfferedLoad load, BlockingTarget target,
                          SolveOptions opts = {}, QuadratureConfig quad = {});

// The load lambda > 0 with B(n, lambda) = target for fixed n >= 1 and
// 0 < target < 1, to relative tolerance opts.x_tol.  Relies on B(n, .)
// increasing with the load, which the test suite guards empirically.
OfferedLoad solve_traffic(long long n, BlockingTarget target,
                          SolveOptions opts = {});

}  // namespace erloss

#endif
