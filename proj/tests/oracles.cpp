#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

long double integrand(long double t, long double x, long double lambda) {
    return std::exp(-lambda * t) * std::pow(1.0L + t, x);
}

long double simpson(long double a, long double b, long double fa,
                    long double fm, long double fb) {
    return (b - a) / 6.0L * (fa + 4.0L * fm + fb);
}

long double adaptive_simpson(long double a, long double b, long double fa,
                             long double fm, long double fb, long double whole,
                             long double tol, int depth, long double x,
                             long double lambda) {
    const long double m = 0.5L * (a + b);
    const long double lm = 0.5L * (a + m);
    const long double rm = 0.5L * (m + b);
    const long double flm = integrand(lm, x, lambda);
    const long double frm = integrand(rm, x, lambda);
    const long double left = simpson(a, m, fa, flm, fm);
    const long double right = simpson(m, b, fm, frm, fb);
    const long double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0L * tol) {
        return left + right + delta / 15.0L;
    }
    return adaptive_simpson(a, m, fa, flm, fm, left, 0.5L * tol, depth - 1, x,
                            lambda) +
           adaptive_simpson(m, b, fm, frm, fb, right, 0.5L * tol, depth - 1, x,
                            lambda);
}

}  // namespace

long double poisson_cdf(long long n, long double lambda) {
    if (n < 0 || !(lambda > 0.0L)) {
        throw std::invalid_argument("poisson_cdf oracle: bad arguments");
    }
    const long long anchor =
        std::min(n, static_cast<long long>(std::floor(lambda)));

    long double t;
    if (anchor > 0) {
        const long double decay = std::exp(-lambda / (long double)anchor);
        t = 1.0L;
        for (long long j = 1; j <= anchor; ++j) {
            t *= decay * (lambda / (long double)j);
        }
    } else {
        t = std::exp(-lambda);
    }

    long double sum = t;
    long double term = t;
    for (long long j = anchor; j > 0; --j) {
        term *= (long double)j / lambda;
        if (term < 1e-30L * sum) break;
        sum += term;
    }
    term = t;
    for (long long j = anchor + 1; j <= n; ++j) {
        term *= lambda / (long double)j;
        if (term < 1e-30L * sum) break;
        sum += term;
    }
    return sum;
}

long double partial_sum_raw(long long n, long double lambda) {
    long double term = 1.0L;
    long double sum = 1.0L;
    for (long long j = 1; j <= n; ++j) {
        term *= lambda / (long double)j;
        sum += term;
    }
    return sum;
}

long double erlang_b_inverse_recursion(long long n, long double lambda) {
    long double inverse = 1.0L;
    for (long long k = 1; k <= n; ++k) {
        inverse = 1.0L + ((long double)k / lambda) * inverse;
    }
    return 1.0L / inverse;
}

long double erlang_b_continuation(long double x, long double lambda) {
    if (x < 0.0L || !(lambda > 0.0L)) {
        throw std::invalid_argument("continuation oracle: bad arguments");
    }
    // Truncation point: e^{-lambda U} (1+U)^x below ~1e-28 relative to the
    // integral's lower bound 1/lambda.
    long double upper = 70.0L / lambda + 1.0L;
    for (int i = 0; i < 6; ++i) {
        upper = (70.0L + x * std::log1p(upper)) / lambda;
    }

    const long double fa = integrand(0.0L, x, lambda);
    const long double fb = integrand(upper, x, lambda);
    const long double fm = integrand(0.5L * upper, x, lambda);
    const long double whole = simpson(0.0L, upper, fa, fm, fb);
    const long double tol = 1e-18L * std::max(whole, 1.0L / lambda);
    const long double integral =
        adaptive_simpson(0.0L, upper, fa, fm, fb, whole, tol, 48, x, lambda);
    return 1.0L / (lambda * integral);
}

long double log_binomial(long long a, long long b) {
    if (b < 0 || b > a) {
        throw std::invalid_argument("log_binomial oracle: bad arguments");
    }
    if (b > a - b) b = a - b;
    long double result = 0.0L;
    for (long long j = 1; j <= b; ++j) {
        result += std::log((long double)(a - b + j) / (long double)j);
    }
    return result;
}

}  // namespace oracle
