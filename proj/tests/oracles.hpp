#ifndef ERLOSS_TESTS_ORACLES_HPP
#define ERLOSS_TESTS_ORACLES_HPP

// Independent reference implementations used only by the test suites.
// They deliberately avoid the code paths of the library: extended
// precision throughout, no shared recursions, different quadrature.

namespace oracle {

// e^{-lambda} * sum_{j=0}^{n} lambda^j / j!, with the e^{-lambda} factor
// folded into an interleaved product so nothing over- or underflows.
long double poisson_cdf(long long n, long double lambda);

// Raw s_n(lambda) by direct term-by-term summation (moderate n, lambda).
long double partial_sum_raw(long long n, long double lambda);

// B(n, lambda) through the inverse-form recursion
// I_{k} = 1 + (k/lambda) I_{k-1}, I_0 = 1, B = 1/I_n.
long double erlang_b_inverse_recursion(long long n, long double lambda);

// B(x, lambda) by recursive adaptive Simpson on
// lambda * Int_0^U e^{-lambda t} (1 + t)^x dt  (truncation chosen so the
// tail is negligible), refined until ~16 stable digits.  No argument
// reduction; usable for x up to ~30 before the integrand gets too wild.
long double erlang_b_continuation(long double x, long double lambda);

// log C(a, b) as an explicit product of b factors.
long double log_binomial(long long a, long long b);

}  // namespace oracle

#endif
