#ifndef ERLOSS_CONTINUATION_HPP
#define ERLOSS_CONTINUATION_HPP

#include <erloss/core.hpp>

namespace erloss {

struct QuadratureConfig {
    double rel_tol = 1e-12;          // successive-estimate agreement target
    int max_refinements = 30;        // node-doubling budget
    double reduction_threshold = 1.0;  // x at or above this is reduced to its
                                       // fractional part before integrating
};

// The analytic continuation of Erlang's loss probability to real server
// counts x >= 0,
//     B(x, lambda) = { lambda * Int_0^inf e^{-lambda t} (1 + t)^x dt }^{-1}.
// After the substitution u = lambda t the braces become
// Int_0^inf e^{-u} (1 + u/lambda)^{x} du, which is integrated by a
// double-exponential rule whose node count doubles per refinement until
// successive estimates agree to cfg.rel_tol.  For x >= reduction_threshold
// only the fractional part is integrated; the inverse value is then pushed
// up with the exact recursion B(y+1)^{-1} = 1 + (y+1)/lambda * B(y)^{-1},
// switching to log space once the inverse exceeds 1e300.
Blocking erlang_b_real(double x, OfferedLoad load, QuadratureConfig cfg = {});

// phi(x, lambda) = 1 - B(x + 1, lambda) for x >= -1; exactly 0 at x == -1.
PhiValue phi_real(double x, OfferedLoad load, QuadratureConfig cfg = {});

// f(x + h) - 2 f(x) + f(x - h); positive for strictly convex f at scale h.
template <typename F>
double second_difference(F&& f, double x, double h) {
    if (!(h > 0.0)) throw std::domain_error("second_difference requires h > 0");
    return f(x + h) - 2.0 * f(x) + f(x - h);
}

namespace detail {

// Int_0^inf e^{-u} (1 + u/lambda)^{exponent} du for exponent in [0, 1).
// Exposed for the continuation tests; throws quadrature_error with the
// last two estimates if the refinement budget runs out.
double continued_inverse_quadrature(double exponent, double lambda,
                                    const QuadratureConfig& cfg);

// B(x, lambda)^{-1} carried as log when it would overflow.
struct InverseBlocking {
    double value;    // meaningful when !is_log
    double log_value;
    bool is_log;
};

InverseBlocking continued_inverse(double x, double lambda,
                                  const QuadratureConfig& cfg);

}  // namespace detail

}  // namespace erloss

#endif
