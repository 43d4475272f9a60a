#ifndef ERLOSS_PROPERTIES_HPP
#define ERLOSS_PROPERTIES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <erloss/continuation.hpp>
#include <erloss/core.hpp>

namespace erloss {

// Outcome of one inequality check.  lhs and rhs are the two sides in the
// orientation lhs < rhs; margin is the value of rhs - lhs, computed in a
// cancellation-free rearrangement so it stays meaningful even where the
// displayed sides round to equal doubles.  passed requires margin > slack,
// where slack is the noise allowance of that rearrangement.
struct CheckReport {
    std::string name;
    std::optional<double> n;
    std::optional<double> m;
    std::optional<double> l;
    std::optional<double> r;
    double lambda = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double slack = 0.0;
    bool passed = false;
    std::string error;  // non-empty when the evaluation itself failed
};

struct SweepGrid {
    long long n_min = 0;
    long long n_max = 100;
    std::vector<double> loads;     // empty means: no checks at all
    long long index_limit = 30;    // bound for (n, m), (m, l), (m, r) tuples
    bool convexity = true;         // include the continuation probes
    double x_min = 0.5;
    double x_max = 20.0;
    double x_step = 0.5;
    double h = 0.01;
    QuadratureConfig quad{};
};

// {0.1, 0.5, 1, 2, 5, 10, 20, 50, 100}
std::vector<double> default_load_grid();

SweepGrid default_sweep_grid();

// s_n/s_{n+1} + s_{n+2}/s_{n+3} < 2 s_{n+1}/s_{n+2}, i.e.
// phi(n) + phi(n+2) < 2 phi(n+1).
CheckReport check_ineq_1_2(long long n, OfferedLoad load);

// [C(n-m+l,l)/C(n,l)] s_{n-l} s_{n-m+l} < s_n s_{n-m} < s_{n-l} s_{n-m+l}
// for n >= m > l >= 1; returns {left report, right report}.
std::pair<CheckReport, CheckReport> check_ineq_1_3(long long n, long long m,
                                                   long long l,
                                                   OfferedLoad load);

// ((m-r)/m) phi(n) + (r/m) phi(n+m) < phi(n+r) for 1 <= r < m, n >= -1.
CheckReport check_ineq_3_2(long long n, long long m, long long r,
                           OfferedLoad load);

// phi(m)/(m+1) < phi(r)/(r+1) for 0 <= r < m.
CheckReport check_ineq_3_3(long long m, long long r, OfferedLoad load);

// s_{n-1} s_{n+1} > (n/(n+1)) s_n^2 for n >= 1 (reported with the smaller
// side as lhs).
CheckReport check_corollary(long long n, OfferedLoad load);

// B strictly decreasing and phi strictly increasing along consecutive n.
std::vector<CheckReport> check_monotonicity(const SweepGrid& grid);

// Second-difference probes of the continuation: B(., lambda) convex and
// phi(., lambda) concave.  Emits a convex_B row for every x >= h and a
// concave_phi row for every x >= h - 1.
std::vector<CheckReport> check_convexity(const std::vector<double>& xs,
                                         OfferedLoad load, double h,
                                         QuadratureConfig cfg = {});

// Every checker above over every applicable tuple in the grid, in
// deterministic (checker, then lexicographic tuple) order.  Evaluation
// errors are captured per report; the sweep never aborts.
std::vector<CheckReport> run_sweep(const SweepGrid& grid);

std::string csv_header();
std::string to_csv_row(const CheckReport& report);
std::string to_json_line(const CheckReport& report);

}  // namespace erloss

#endif
