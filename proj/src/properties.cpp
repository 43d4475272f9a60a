#include <erloss/properties.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <erloss/format.hpp>

namespace erloss {

namespace {

// Strictness must be asserted above numerical noise: a check passes when
// the stably-computed margin exceeds kRelSlack times the magnitude of the
// terms that produced it, plus an absolute floor against exact ties.
const double kRelSlack = 1e-12;
const double kAbsSlackFloor = 1e-300;

// Raw products of partial sums are displayed in linear form while their
// logs stay below this (~log 1e300); beyond it the log values themselves
// are reported.
const double kLinearDisplayCap = 690.0;

double slack_for(double noise_scale) {
    return kRelSlack * noise_scale + kAbsSlackFloor;
}

double clamped_phi(double blocking) {
    const double below_one = std::nextafter(1.0, 0.0);
    const double v = 1.0 - blocking;
    return v > below_one ? below_one : v;
}

// B(a), B(b), B(c) at one load for a <= b <= c, in a single pass of the
// forward recursion.
struct TripleB {
    double a = 1.0, b = 1.0, c = 1.0;
};

TripleB erlang_b_triple(double lambda, long long a, long long b, long long c) {
    TripleB out;
    double blocking = 1.0;
    for (long long k = 1; k <= c; ++k) {
        blocking = lambda * blocking / (static_cast<double>(k) + lambda * blocking);
        if (k == a) out.a = blocking;
        if (k == b) out.b = blocking;
        if (k == c) out.c = blocking;
    }
    return out;
}

std::vector<double> erlang_b_chain(double lambda, long long up_to) {
    std::vector<double> chain(static_cast<size_t>(up_to) + 1);
    chain[0] = 1.0;
    double blocking = 1.0;
    for (long long k = 1; k <= up_to; ++k) {
        blocking = lambda * blocking / (static_cast<double>(k) + lambda * blocking);
        chain[static_cast<size_t>(k)] = blocking;
    }
    return chain;
}

void finish(CheckReport& rep, double margin, double noise_scale) {
    rep.margin = margin;
    rep.slack = slack_for(noise_scale);
    rep.passed = rep.margin > rep.slack;
}

// Display mapping shared by the product-of-sums checks.  The verdict lives
// in log-ratio space (difference = log(rhs_raw / lhs_raw)); the report
// shows the raw sides when they are representable, with margin and slack
// pushed through the same strictly increasing transform so that
// passed <=> margin > slack survives the change of scale.
void finish_product(CheckReport& rep, double log_lhs_raw, double log_rhs_raw,
                    double log_margin, double log_noise_scale) {
    const double log_slack = slack_for(log_noise_scale);
    rep.passed = log_margin > log_slack;
    if (std::max(log_lhs_raw, log_rhs_raw) <= kLinearDisplayCap) {
        rep.lhs = std::exp(log_lhs_raw);
        rep.rhs = std::exp(log_rhs_raw);
        rep.margin = rep.rhs * -std::expm1(-log_margin);
        rep.slack = rep.rhs * -std::expm1(-log_slack);
    } else {
        rep.lhs = log_lhs_raw;
        rep.rhs = log_rhs_raw;
        rep.margin = log_margin;
        rep.slack = log_slack;
    }
}

}  // namespace

std::vector<double> default_load_grid() {
    return {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0};
}

SweepGrid default_sweep_grid() {
    SweepGrid grid;
    grid.loads = default_load_grid();
    return grid;
}

CheckReport check_ineq_1_2(long long n, OfferedLoad load) {
    if (n < 0) throw std::domain_error("check_ineq_1_2 requires n >= 0");
    const double lambda = load.value();
    const TripleB b = erlang_b_triple(lambda, n + 1, n + 2, n + 3);

    CheckReport rep;
    rep.name = "ineq_1_2";
    rep.n = static_cast<double>(n);
    rep.lambda = lambda;
    rep.lhs = clamped_phi(b.a) + clamped_phi(b.c);
    rep.rhs = 2.0 * clamped_phi(b.b);
    // rhs - lhs = B(n+1) + B(n+3) - 2 B(n+2): the same difference without
    // the phi values' rounding against 1.
    finish(rep, (b.a - b.b) - (b.b - b.c), b.a + 2.0 * b.b + b.c);
    return rep;
}

std::pair<CheckReport, CheckReport> check_ineq_1_3(long long n, long long m,
                                                   long long l,
                                                   OfferedLoad load) {
    if (!(n >= m && m > l && l >= 1)) {
        throw std::domain_error("check_ineq_1_3 requires n >= m > l >= 1");
    }
    const double lambda = load.value();
    const std::vector<double> b = erlang_b_chain(lambda, n);
    const long long shift = m - l;

    // Both sides reduce to products over j = n-l .. n-1 of ratios that can
    // be formed from B values with full relative precision:
    //   right:  log(phi(j) / phi(j-shift))
    //   left:   log( [phi(j')/(j'+1)] / [phi(j)/(j+1)] ),  j' = j - shift,
    // each term positive exactly when the inequality holds pairwise.
    double left_margin = 0.0, left_noise = 0.0;
    double right_margin = 0.0, right_noise = 0.0;
    for (long long j = n - l; j <= n - 1; ++j) {
        const long long jp = j - shift;
        const double b_low = b[static_cast<size_t>(jp + 1)];
        const double b_high = b[static_cast<size_t>(j + 1)];
        const double phi_low = 1.0 - b_low;
        const double phi_high = 1.0 - b_high;

        right_margin += std::log1p((b_low - b_high) / phi_low);
        right_noise += (b_low + b_high) / phi_low;

        const double numer = static_cast<double>(shift) -
                             static_cast<double>(j + 1) * b_low +
                             static_cast<double>(jp + 1) * b_high;
        const double denom = static_cast<double>(jp + 1) * phi_high;
        left_margin += std::log1p(numer / denom);
        left_noise += (static_cast<double>(shift) +
                       static_cast<double>(j + 1) * b_low +
                       static_cast<double>(jp + 1) * b_high) /
                      denom;
    }

    const double ls_n = log_partial_sum(n, load);
    const double ls_nm = log_partial_sum(n - m, load);
    const double ls_nl = log_partial_sum(n - l, load);
    const double ls_nml = log_partial_sum(n - m + l, load);
    const double log_ratio = log_binomial(n - m + l, l) - log_binomial(n, l);

    CheckReport left;
    left.name = "ineq_1_3_left";
    left.n = static_cast<double>(n);
    left.m = static_cast<double>(m);
    left.l = static_cast<double>(l);
    left.lambda = lambda;
    finish_product(left, log_ratio + ls_nl + ls_nml, ls_n + ls_nm, left_margin,
                   left_noise);

    CheckReport right;
    right.name = "ineq_1_3_right";
    right.n = static_cast<double>(n);
    right.m = static_cast<double>(m);
    right.l = static_cast<double>(l);
    right.lambda = lambda;
    finish_product(right, ls_n + ls_nm, ls_nl + ls_nml, right_margin,
                   right_noise);

    return {left, right};
}

CheckReport check_ineq_3_2(long long n, long long m, long long r,
                           OfferedLoad load) {
    if (!(r >= 1 && r < m)) {
        throw std::domain_error("check_ineq_3_2 requires 1 <= r < m");
    }
    if (n < -1) throw std::domain_error("check_ineq_3_2 requires n >= -1");
    const double lambda = load.value();
    const TripleB b = erlang_b_triple(lambda, n + 1, n + r + 1, n + m + 1);
    const double w_low = static_cast<double>(m - r) / static_cast<double>(m);
    const double w_high = static_cast<double>(r) / static_cast<double>(m);

    CheckReport rep;
    rep.name = "ineq_3_2";
    rep.n = static_cast<double>(n);
    rep.m = static_cast<double>(m);
    rep.r = static_cast<double>(r);
    rep.lambda = lambda;
    rep.lhs = w_low * clamped_phi(b.a) + w_high * clamped_phi(b.c);
    rep.rhs = clamped_phi(b.b);
    finish(rep, w_low * b.a + w_high * b.c - b.b,
           w_low * b.a + w_high * b.c + b.b);
    return rep;
}

CheckReport check_ineq_3_3(long long m, long long r, OfferedLoad load) {
    if (!(r >= 0 && r < m)) {
        throw std::domain_error("check_ineq_3_3 requires 0 <= r < m");
    }
    const double lambda = load.value();
    const TripleB b = erlang_b_triple(lambda, r + 1, r + 1, m + 1);
    const double m1 = static_cast<double>(m + 1);
    const double r1 = static_cast<double>(r + 1);

    CheckReport rep;
    rep.name = "ineq_3_3";
    rep.m = static_cast<double>(m);
    rep.r = static_cast<double>(r);
    rep.lambda = lambda;
    rep.lhs = clamped_phi(b.c) / m1;
    rep.rhs = clamped_phi(b.a) / r1;
    // rhs - lhs = [(m-r) - (m+1) B(r+1) + (r+1) B(m+1)] / ((m+1)(r+1))
    finish(rep,
           (static_cast<double>(m - r) - m1 * b.a + r1 * b.c) / (m1 * r1),
           (static_cast<double>(m - r) + m1 * b.a + r1 * b.c) / (m1 * r1));
    return rep;
}

CheckReport check_corollary(long long n, OfferedLoad load) {
    if (n < 1) throw std::domain_error("check_corollary requires n >= 1");
    const double lambda = load.value();
    const TripleB b = erlang_b_triple(lambda, n, n, n + 1);

    // s_{n-1} s_{n+1} > (n/(n+1)) s_n^2 is ineq (3.3) at (m, r) = (n, n-1);
    // the log of the side ratio therefore shares its stable numerator.
    const double numer = 1.0 - static_cast<double>(n + 1) * b.a +
                         static_cast<double>(n) * b.c;
    const double denom = static_cast<double>(n) * (1.0 - b.a);
    const double log_margin = std::log1p(numer / denom);
    const double log_noise = (1.0 + static_cast<double>(n + 1) * b.a +
                              static_cast<double>(n) * b.c) /
                             denom;

    const double ls_prev = log_partial_sum(n - 1, load);
    const double ls_mid = log_partial_sum(n, load);
    const double ls_next = log_partial_sum(n + 1, load);
    const double coef = static_cast<double>(n) / static_cast<double>(n + 1);

    CheckReport rep;
    rep.name = "corollary";
    rep.n = static_cast<double>(n);
    rep.lambda = lambda;
    finish_product(rep, std::log(coef) + 2.0 * ls_mid, ls_prev + ls_next,
                   log_margin, log_noise);
    return rep;
}

std::vector<CheckReport> check_monotonicity(const SweepGrid& grid) {
    std::vector<CheckReport> out;
    if (grid.loads.empty() || grid.n_max <= grid.n_min) return out;

    std::vector<std::vector<double>> chains;
    chains.reserve(grid.loads.size());
    for (double lambda : grid.loads) {
        chains.push_back(erlang_b_chain(OfferedLoad(lambda).value(),
                                        grid.n_max + 2));
    }

    for (long long n = grid.n_min; n < grid.n_max; ++n) {
        for (size_t i = 0; i < grid.loads.size(); ++i) {
            const auto& b = chains[i];
            CheckReport rep;
            rep.name = "monotone_B";
            rep.n = static_cast<double>(n);
            rep.lambda = grid.loads[i];
            rep.lhs = b[static_cast<size_t>(n + 1)];
            rep.rhs = b[static_cast<size_t>(n)];
            finish(rep, rep.rhs - rep.lhs, rep.rhs + rep.lhs);
            out.push_back(std::move(rep));
        }
    }
    for (long long n = grid.n_min; n < grid.n_max; ++n) {
        for (size_t i = 0; i < grid.loads.size(); ++i) {
            const auto& b = chains[i];
            const double b1 = b[static_cast<size_t>(n + 1)];
            const double b2 = b[static_cast<size_t>(n + 2)];
            CheckReport rep;
            rep.name = "monotone_phi";
            rep.n = static_cast<double>(n);
            rep.lambda = grid.loads[i];
            rep.lhs = clamped_phi(b1);
            rep.rhs = clamped_phi(b2);
            finish(rep, b1 - b2, b1 + b2);
            out.push_back(std::move(rep));
        }
    }
    return out;
}

std::vector<CheckReport> check_convexity(const std::vector<double>& xs,
                                         OfferedLoad load, double h,
                                         QuadratureConfig cfg) {
    if (!(h > 0.0)) throw std::domain_error("check_convexity requires h > 0");
    std::vector<CheckReport> out;

    // Probes at B level: phi(x) = 1 - B(x+1), so the second difference of
    // phi is exactly the negated second difference of B at x+1, and the
    // quadrature noise scales with the B values either way.
    auto probe = [&](double x) {
        const double b_minus = erlang_b_real(x - h, load, cfg).value;
        const double b_mid = erlang_b_real(x, load, cfg).value;
        const double b_plus = erlang_b_real(x + h, load, cfg).value;
        const double d2 = (b_plus - b_mid) - (b_mid - b_minus);
        const double magnitude =
            std::max({std::fabs(b_minus), std::fabs(b_mid), std::fabs(b_plus)});
        const double floor = 10.0 * cfg.rel_tol * magnitude;
        return std::pair<double, double>(d2, floor);
    };

    for (double x : xs) {
        if (x - h < 0.0) continue;
        auto [d2, floor] = probe(x);
        CheckReport rep;
        rep.name = "convex_B";
        rep.n = x;
        rep.lambda = load.value();
        rep.lhs = floor;
        rep.rhs = d2;
        finish(rep, d2 - floor, std::fabs(d2) + floor);
        out.push_back(std::move(rep));
    }
    for (double x : xs) {
        if (x + 1.0 - h < 0.0) continue;
        auto [d2, floor] = probe(x + 1.0);
        CheckReport rep;
        rep.name = "concave_phi";
        rep.n = x;
        rep.lambda = load.value();
        rep.lhs = -d2;  // the second difference of phi at x
        rep.rhs = -floor;
        finish(rep, d2 - floor, std::fabs(d2) + floor);
        out.push_back(std::move(rep));
    }
    return out;
}

namespace {

CheckReport error_report(std::string name, std::optional<double> n,
                         std::optional<double> m, std::optional<double> l,
                         std::optional<double> r, double lambda,
                         const char* what) {
    CheckReport rep;
    rep.name = std::move(name);
    rep.n = n;
    rep.m = m;
    rep.l = l;
    rep.r = r;
    rep.lambda = lambda;
    rep.lhs = rep.rhs = rep.margin = rep.slack =
        std::numeric_limits<double>::quiet_NaN();
    rep.passed = false;
    rep.error = what;
    return rep;
}

void validate(const SweepGrid& grid) {
    if (grid.n_min < 0 || grid.n_max < grid.n_min) {
        throw std::domain_error("sweep grid requires 0 <= n_min <= n_max");
    }
    if (grid.index_limit < 0) {
        throw std::domain_error("sweep grid requires index_limit >= 0");
    }
    if (grid.convexity && (!(grid.x_step > 0.0) || !(grid.h > 0.0))) {
        throw std::domain_error("sweep grid requires x_step > 0 and h > 0");
    }
    for (double lambda : grid.loads) static_cast<void>(OfferedLoad(lambda));
}

}  // namespace

std::vector<CheckReport> run_sweep(const SweepGrid& grid) {
    validate(grid);
    std::vector<CheckReport> out;
    if (grid.loads.empty()) return out;

    auto guarded = [&out](auto&& call, auto&&... params) {
        try {
            call();
        } catch (const std::exception& e) {
            out.push_back(error_report(params..., e.what()));
        }
    };

    for (long long n = grid.n_min; n <= grid.n_max; ++n) {
        for (double lambda : grid.loads) {
            guarded([&] { out.push_back(check_ineq_1_2(n, OfferedLoad(lambda))); },
                    "ineq_1_2", n, std::nullopt, std::nullopt, std::nullopt,
                    lambda);
        }
    }

    const long long triple_max = std::min(grid.index_limit, grid.n_max);
    for (long long n = 2; n <= triple_max; ++n) {
        for (long long m = 2; m <= n; ++m) {
            for (long long l = 1; l < m; ++l) {
                for (double lambda : grid.loads) {
                    guarded(
                        [&] {
                            auto [left, right] =
                                check_ineq_1_3(n, m, l, OfferedLoad(lambda));
                            out.push_back(std::move(left));
                            out.push_back(std::move(right));
                        },
                        "ineq_1_3", n, m, l, std::nullopt, lambda);
                }
            }
        }
    }

    for (long long n = -1; n <= grid.n_max; ++n) {
        if (n >= 0 && n < grid.n_min) continue;
        for (long long m = 2; m <= grid.index_limit; ++m) {
            for (long long r = 1; r < m; ++r) {
                for (double lambda : grid.loads) {
                    guarded(
                        [&] {
                            out.push_back(
                                check_ineq_3_2(n, m, r, OfferedLoad(lambda)));
                        },
                        "ineq_3_2", n, m, std::nullopt, r, lambda);
                }
            }
        }
    }

    for (long long m = 1; m <= grid.index_limit; ++m) {
        for (long long r = 0; r < m; ++r) {
            for (double lambda : grid.loads) {
                guarded(
                    [&] {
                        out.push_back(check_ineq_3_3(m, r, OfferedLoad(lambda)));
                    },
                    "ineq_3_3", std::nullopt, m, std::nullopt, r, lambda);
            }
        }
    }

    for (long long n = std::max<long long>(grid.n_min, 1); n <= grid.n_max;
         ++n) {
        for (double lambda : grid.loads) {
            guarded(
                [&] { out.push_back(check_corollary(n, OfferedLoad(lambda))); },
                "corollary", n, std::nullopt, std::nullopt, std::nullopt,
                lambda);
        }
    }

    {
        auto rows = check_monotonicity(grid);
        out.insert(out.end(), std::make_move_iterator(rows.begin()),
                   std::make_move_iterator(rows.end()));
    }

    if (grid.convexity) {
        std::vector<double> xs;
        for (double x = grid.x_min; x <= grid.x_max + 1e-12; x += grid.x_step) {
            xs.push_back(x);
        }
        std::vector<std::vector<CheckReport>> rows;
        rows.reserve(grid.loads.size());
        for (double lambda : grid.loads) {
            std::vector<CheckReport> r;
            try {
                r = check_convexity(xs, OfferedLoad(lambda), grid.h, grid.quad);
            } catch (const std::exception& e) {
                r.push_back(error_report("convex_B", std::nullopt, std::nullopt,
                                         std::nullopt, std::nullopt, lambda,
                                         e.what()));
            }
            rows.push_back(std::move(r));
        }
        for (auto& per_load : rows) {
            for (auto& rep : per_load) {
                if (rep.name == "convex_B") out.push_back(std::move(rep));
            }
        }
        for (auto& per_load : rows) {
            for (auto& rep : per_load) {
                if (rep.name == "concave_phi") out.push_back(std::move(rep));
            }
        }
    }

    return out;
}

namespace {

std::string csv_field(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string();
}

std::string json_field(const std::optional<double>& v) {
    return v ? json_number(*v) : std::string("null");
}

}  // namespace

std::string csv_header() {
    return "name,n,m,l,r,lambda,lhs,rhs,margin,passed";
}

std::string to_csv_row(const CheckReport& rep) {
    std::string row = rep.name;
    row += ',';
    row += csv_field(rep.n);
    row += ',';
    row += csv_field(rep.m);
    row += ',';
    row += csv_field(rep.l);
    row += ',';
    row += csv_field(rep.r);
    row += ',';
    row += format_number(rep.lambda);
    row += ',';
    row += format_number(rep.lhs);
    row += ',';
    row += format_number(rep.rhs);
    row += ',';
    row += format_number(rep.margin);
    row += ',';
    row += rep.passed ? "true" : "false";
    return row;
}

std::string to_json_line(const CheckReport& rep) {
    std::string line = "{\"name\":\"";
    line += rep.name;
    line += "\",\"n\":";
    line += json_field(rep.n);
    line += ",\"m\":";
    line += json_field(rep.m);
    line += ",\"l\":";
    line += json_field(rep.l);
    line += ",\"r\":";
    line += json_field(rep.r);
    line += ",\"lambda\":";
    line += json_number(rep.lambda);
    line += ",\"lhs\":";
    line += json_number(rep.lhs);
    line += ",\"rhs\":";
    line += json_number(rep.rhs);
    line += ",\"margin\":";
    line += json_number(rep.margin);
    line += ",\"passed\":";
    line += rep.passed ? "true" : "false";
    line += '}';
    return line;
}

}  // namespace erloss
