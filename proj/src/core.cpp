#include <erloss/core.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace erloss {

namespace {

const double kTwoPi = 6.283185307179586476925287;

[[noreturn]] void throw_domain(const std::string& what) {
    throw std::domain_error(what);
}

}  // namespace

OfferedLoad::OfferedLoad(double erlangs) : value_(erlangs) {
    if (!std::isfinite(erlangs) || erlangs <= 0.0) {
        throw_domain("offered load must be finite and > 0, got " +
                     std::to_string(erlangs));
    }
}

namespace detail {

double log_gamma(double x) {
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double stirling_error(long long n) {
    static const double* table = [] {
        static double t[16];
        const double half_log_two_pi = 0.5 * std::log(kTwoPi);
        t[0] = 0.0;
        double log_factorial = 0.0;
        for (int k = 1; k < 16; ++k) {
            const double log_k = std::log(static_cast<double>(k));
            log_factorial += log_k;
            t[k] = log_factorial + k - half_log_two_pi - (k + 0.5) * log_k;
        }
        return t;
    }();
    if (n < 16) return table[n];

    const double S0 = 1.0 / 12.0;
    const double S1 = 1.0 / 360.0;
    const double S2 = 1.0 / 1260.0;
    const double S3 = 1.0 / 1680.0;
    const double S4 = 1.0 / 1188.0;
    const double n1 = 1.0 / static_cast<double>(n);
    const double n2 = n1 * n1;
    if (n > 500) return (S0 - S1 * n2) * n1;
    if (n > 80) return (S0 - (S1 - S2 * n2) * n2) * n1;
    if (n > 35) return (S0 - (S1 - (S2 - S3 * n2) * n2) * n2) * n1;
    return (S0 - (S1 - (S2 - (S3 - S4 * n2) * n2) * n2) * n2) * n1;
}

double bd0(double x, double np) {
    if (std::fabs(x - np) < 0.1 * (x + np)) {
        const double v = (x - np) / (x + np);
        double s = (x - np) * v;
        double term = 2.0 * x * v;
        for (int j = 1;; ++j) {
            term *= v * v;
            const double s_next = s + term / (2 * j + 1);
            if (s_next == s) return s_next;
            s = s_next;
        }
    }
    return x * std::log(x / np) + np - x;
}

double log_poisson_pmf(long long j, double lambda) {
    if (j == 0) return -lambda;
    const double x = static_cast<double>(j);
    return -stirling_error(j) - bd0(x, lambda) - 0.5 * std::log(kTwoPi * x);
}

namespace {

struct PartialSumParts {
    double log_peak;  // log of the scaled Poisson term at the anchor index
    double sum;       // sum of all terms j = 0..n, each divided by the anchor term
};

// Accumulates sum_{j=0}^{n} pois(j; lambda) relative to the term at the
// anchor m = min(n, floor(lambda)).  Term ratios are exact one-step
// multiplications, so only the anchor needs log_poisson_pmf; terms more
// than ~1e-20 below the running sum cannot affect the double result and
// are skipped.  Kahan compensation keeps the summation error at ~1 ulp.
PartialSumParts accumulate_partial_sum(long long n, double lambda) {
    const long long anchor =
        std::min(n, static_cast<long long>(std::floor(lambda)));
    const double cutoff = 1e-20;

    double sum = 1.0;  // the anchor term itself
    double comp = 0.0;
    auto add = [&](double term) {
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };

    double term = 1.0;
    for (long long j = anchor; j > 0; --j) {  // downward: ratio j / lambda
        term *= static_cast<double>(j) / lambda;
        if (term < cutoff * sum) break;
        add(term);
    }
    term = 1.0;
    for (long long j = anchor + 1; j <= n; ++j) {  // upward: ratio lambda / j
        term *= lambda / static_cast<double>(j);
        if (term < cutoff * sum) break;
        add(term);
    }
    return {log_poisson_pmf(anchor, lambda), sum};
}

}  // namespace

}  // namespace detail

ScaledPartialSum scaled_partial_sum(long long n, OfferedLoad load) {
    if (n < 0) throw_domain("scaled_partial_sum requires n >= 0");
    const auto parts = detail::accumulate_partial_sum(n, load.value());
    double value = std::exp(parts.log_peak + std::log(parts.sum));
    // Saturate at the representable neighbours of the open interval (0,1).
    const double below_one = std::nextafter(1.0, 0.0);
    if (value > below_one) value = below_one;
    if (value <= 0.0) value = std::numeric_limits<double>::denorm_min();
    return {n, value, load};
}

double log_partial_sum(long long n, OfferedLoad load) {
    if (n < 0) throw_domain("log_partial_sum requires n >= 0");
    const auto parts = detail::accumulate_partial_sum(n, load.value());
    return load.value() + parts.log_peak + std::log(parts.sum);
}

Blocking erlang_b_int(long long n, OfferedLoad load) {
    if (n < 0) throw_domain("erlang_b_int requires n >= 0");
    const double lambda = load.value();
    double b = 1.0;
    for (long long k = 1; k <= n; ++k) {
        b = lambda * b / (static_cast<double>(k) + lambda * b);
    }
    if (b <= 0.0) {
        // The recursion underflowed; the true probability is below double
        // range, which no caller contract in this library reaches.
        throw numeric_error("erlang_b_int underflowed: B(" + std::to_string(n) +
                            ", " + std::to_string(lambda) +
                            ") is below double range");
    }
    return {b};
}

PhiValue phi(long long n, OfferedLoad load) {
    if (n < -1) throw_domain("phi requires n >= -1");
    if (n == -1) return {0.0};
    const double b = erlang_b_int(n + 1, load).value;
    double value = 1.0 - b;
    const double below_one = std::nextafter(1.0, 0.0);
    if (value > below_one) value = below_one;  // b below ulp resolution of 1
    return {value};
}

double log_binomial(long long a, long long b) {
    if (a < 0 || b < 0 || b > a) {
        throw_domain("log_binomial requires 0 <= b <= a");
    }
    if (b == 0 || b == a) return 0.0;
    const double ad = static_cast<double>(a);
    const double bd = static_cast<double>(b);
    return detail::log_gamma(ad + 1.0) - detail::log_gamma(bd + 1.0) -
           detail::log_gamma(ad - bd + 1.0);
}

}  // namespace erloss
