#include <erloss/continuation.hpp>

#include <cmath>
#include <string>

namespace erloss {

namespace detail {

namespace {

const double kHalfPi = 1.5707963267948966;

// e^{-u} (1 + u/lambda)^{exponent}, evaluated through the exponent so the
// two factors can never produce 0 * inf.
double integrand(double u, double exponent, double lambda) {
    double power_log;
    if (u > lambda * 1e300) {
        power_log = std::log(u) - std::log(lambda);
    } else {
        power_log = std::log1p(u / lambda);
    }
    const double e = -u + exponent * power_log;
    return e < -745.0 ? 0.0 : std::exp(e);
}

}  // namespace

double continued_inverse_quadrature(double exponent, double lambda,
                                    const QuadratureConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || cfg.max_refinements < 1) {
        throw std::domain_error("invalid quadrature configuration");
    }
    // u = exp(pi/2 * sinh(t)) maps (0, inf) onto the whole t axis with
    // double-exponential decay of the trapezoid error; |t| <= 4 already
    // covers u from ~1e-19 to far past where e^{-u} underflows.
    const double t_max = 4.0;
    auto weighted = [&](double t) {
        const double s = kHalfPi * std::sinh(t);
        if (s > 709.0) return 0.0;
        const double u = std::exp(s);
        return kHalfPi * std::cosh(t) * u * integrand(u, exponent, lambda);
    };

    double h = 0.5;
    double node_sum = weighted(0.0);
    for (int k = 1; k * h <= t_max; ++k) {
        node_sum += weighted(k * h) + weighted(-k * h);
    }
    double estimate = h * node_sum;

    double previous = estimate;
    for (int level = 1; level <= cfg.max_refinements; ++level) {
        h *= 0.5;
        for (int k = 1; k * h <= t_max; k += 2) {  // new (odd) nodes only
            node_sum += weighted(k * h) + weighted(-k * h);
        }
        previous = estimate;
        estimate = h * node_sum;
        if (level >= 2 &&
            std::fabs(estimate - previous) <= cfg.rel_tol * std::fabs(estimate)) {
            return estimate;
        }
    }
    throw quadrature_error(
        "quadrature did not converge to rel_tol=" + std::to_string(cfg.rel_tol) +
            " within " + std::to_string(cfg.max_refinements) + " refinements",
        previous, estimate);
}

InverseBlocking continued_inverse(double x, double lambda,
                                  const QuadratureConfig& cfg) {
    double fractional = x;
    long long steps = 0;
    if (x >= cfg.reduction_threshold) {
        const double whole = std::floor(x);
        fractional = x - whole;
        steps = static_cast<long long>(whole);
    }

    double inv = continued_inverse_quadrature(fractional, lambda, cfg);
    // The integrand dominates e^{-u}, so the exact value is >= 1; anything
    // below is quadrature noise.
    if (inv < 1.0) inv = 1.0;

    bool is_log = false;
    double log_inv = 0.0;
    for (long long k = 1; k <= steps; ++k) {
        const double coef = (fractional + static_cast<double>(k)) / lambda;
        if (!is_log && inv > 1e300) {
            is_log = true;
            log_inv = std::log(inv);
        }
        if (is_log) {
            // I' = 1 + coef * I = coef * I * (1 + 1/(coef I))
            log_inv += std::log(coef) + std::log1p(std::exp(-log_inv) / coef);
        } else {
            inv = 1.0 + coef * inv;
        }
    }
    return {inv, log_inv, is_log};
}

}  // namespace detail

Blocking erlang_b_real(double x, OfferedLoad load, QuadratureConfig cfg) {
    if (!std::isfinite(x) || x < 0.0) {
        throw std::domain_error("erlang_b_real requires finite x >= 0");
    }
    const auto inv = detail::continued_inverse(x, load.value(), cfg);
    const double b = inv.is_log ? std::exp(-inv.log_value) : 1.0 / inv.value;
    if (b <= 0.0) {
        throw numeric_error("erlang_b_real underflowed: B(" + std::to_string(x) +
                            ", " + std::to_string(load.value()) +
                            ") is below double range");
    }
    return {b};
}

PhiValue phi_real(double x, OfferedLoad load, QuadratureConfig cfg) {
    if (!std::isfinite(x) || x < -1.0) {
        throw std::domain_error("phi_real requires finite x >= -1");
    }
    if (x == -1.0) return {0.0};
    const double b = erlang_b_real(x + 1.0, load, cfg).value;
    double value = 1.0 - b;
    const double below_one = std::nextafter(1.0, 0.0);
    if (value > below_one) value = below_one;
    return {value};
}

}  // namespace erloss
