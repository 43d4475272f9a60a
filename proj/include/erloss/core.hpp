#ifndef ERLOSS_CORE_HPP
#define ERLOSS_CORE_HPP

#include <erloss/errors.hpp>

namespace erloss {

// Offered traffic intensity in erlangs.  Must be finite and strictly
// positive; NaN, infinities and non-positive values are rejected here so
// downstream code never sees them.
class OfferedLoad {
public:
    explicit OfferedLoad(double erlangs);
    double value() const { return value_; }

private:
    double value_;
};

// Blocking probability, in (0, 1].  Equals 1 exactly when servers == 0.
struct Blocking {
    double value;
};

// The ratio s_n / s_{n+1} of consecutive partial sums of e^lambda,
// equivalently 1 - B(n+1, lambda).  In [0, 1); 0 only for the n == -1
// extension.
struct PhiValue {
    double value;
};

// e^{-lambda} * s_n(lambda), where s_n is the nth partial sum of the
// Taylor series of e^lambda.  This is the Poisson(lambda) CDF at n, so it
// lives in (0, 1) and increases with n.
struct ScaledPartialSum {
    long long n;
    double scaled_value;
    OfferedLoad load;
};

// e^{-lambda} * sum_{j=0}^{n} lambda^j / j!, accumulated from Poisson
// probability terms so that it never overflows (n and lambda up to 1e6
// and beyond).  Saturates at the nearest representable neighbours of 0
// and 1 when the true value falls outside double range.
ScaledPartialSum scaled_partial_sum(long long n, OfferedLoad load);

// Natural log of the raw partial sum s_n(lambda).  Log-domain companion
// of scaled_partial_sum for forming products of sums without overflow.
double log_partial_sum(long long n, OfferedLoad load);

// Erlang's loss probability B(n, lambda) for an integer number of
// servers, via the forward recursion
//     b_0 = 1,   b_k = lambda * b_{k-1} / (k + lambda * b_{k-1}),
// which stays inside (0, 1] for every step.
Blocking erlang_b_int(long long n, OfferedLoad load);

// phi(n, lambda) = s_n / s_{n+1} = 1 - B(n+1, lambda) for n >= 0, with
// the conventional extension phi(-1, lambda) = 0.
PhiValue phi(long long n, OfferedLoad load);

// log C(a, b) for 0 <= b <= a.  Exactly 0 at the boundaries.
double log_binomial(long long a, long long b);

namespace detail {

// lgamma without the signgam race (positive arguments only here).
double log_gamma(double x);

// log(n!) - [(n + 1/2) log n - n + log sqrt(2 pi)], the Stirling series
// remainder.
double stirling_error(long long n);

// x log(x / np) + np - x, evaluated by a series when x ~ np so the
// leading cancellation never happens in floating point.
double bd0(double x, double np);

// log of the Poisson(lambda) probability mass at j, accurate to a few
// ulp even when j and lambda are ~1e6 (direct use of lgamma would lose
// ~6 digits there to cancellation).
double log_poisson_pmf(long long j, double lambda);

}  // namespace detail

}  // namespace erloss

#endif
