// erloss: Erlang-B computations, dimensioning solvers, the inequality
// verification sweep, table generation, and the loss-system simulator.

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <erloss/continuation.hpp>
#include <erloss/core.hpp>
#include <erloss/format.hpp>
#include <erloss/inverse.hpp>
#include <erloss/properties.hpp>
#include <erloss/simulator.hpp>

namespace {

using erloss::format_number;
using erloss::json_number;

enum class Format { plain, csv, json };

Format parse_format(const std::string& name) {
    if (name == "plain") return Format::plain;
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw CLI::ValidationError("--format must be plain, csv or json");
}

std::vector<double> parse_loads(const std::string& csv) {
    std::vector<double> loads;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        const std::string item = csv.substr(pos, comma - pos);
        if (!item.empty()) loads.push_back(std::stod(item));
        pos = comma + 1;
    }
    return loads;
}

struct IntRange {
    long long first = 0;
    long long last = 0;
};

IntRange parse_range(const std::string& text) {
    const size_t dots = text.find("..");
    IntRange range;
    if (dots == std::string::npos) {
        range.first = range.last = std::stoll(text);
    } else {
        range.first = std::stoll(text.substr(0, dots));
        range.last = std::stoll(text.substr(dots + 2));
    }
    if (range.first < 0 || range.last < range.first) {
        throw std::domain_error("bad range: " + text);
    }
    return range;
}

bool integer_syntax(const std::string& text) {
    if (text.empty()) return false;
    for (char c : text) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

int cmd_blocking(const std::string& arg, double load_value,
                 const std::string& method, double rel_tol, Format format) {
    erloss::OfferedLoad load(load_value);
    bool use_int = method == "int" || (method.empty() && integer_syntax(arg));
    const double x = std::stod(arg);
    if (!(x >= 0.0)) throw std::domain_error("server count must be >= 0");

    double blocking;
    if (use_int) {
        if (x != static_cast<double>(static_cast<long long>(x))) {
            throw std::domain_error(
                "--method int requires an integer server count, got " + arg);
        }
        blocking = erloss::erlang_b_int(static_cast<long long>(x), load).value;
    } else {
        erloss::QuadratureConfig cfg;
        cfg.rel_tol = rel_tol;
        blocking = erloss::erlang_b_real(x, load, cfg).value;
    }

    switch (format) {
        case Format::plain:
            std::cout << format_number(blocking) << '\n';
            break;
        case Format::csv:
            std::cout << "x,lambda,method,blocking\n"
                      << arg << ',' << format_number(load_value) << ','
                      << (use_int ? "int" : "real") << ','
                      << format_number(blocking) << '\n';
            break;
        case Format::json:
            std::cout << "{\"x\":" << json_number(x)
                      << ",\"lambda\":" << json_number(load_value)
                      << ",\"method\":\"" << (use_int ? "int" : "real")
                      << "\",\"blocking\":" << json_number(blocking) << "}\n";
            break;
    }
    return 0;
}

void print_inverse(Format format, const std::string& mode, double result,
                   bool integral, std::optional<double> residual) {
    switch (format) {
        case Format::plain:
            if (integral) {
                std::cout << static_cast<long long>(result) << '\n';
            } else {
                std::cout << format_number(result) << '\n';
            }
            if (residual) {
                std::cout << "residual " << format_number(*residual) << '\n';
            }
            break;
        case Format::csv:
            std::cout << "mode,result,residual\n"
                      << mode << ',' << format_number(result) << ','
                      << (residual ? format_number(*residual) : std::string())
                      << '\n';
            break;
        case Format::json:
            std::cout << "{\"mode\":\"" << mode
                      << "\",\"result\":" << json_number(result)
                      << ",\"residual\":"
                      << (residual ? json_number(*residual)
                                   : std::string("null"))
                      << "}\n";
            break;
    }
}

int cmd_verify(const erloss::SweepGrid& grid, Format format) {
    const auto reports = erloss::run_sweep(grid);

    std::string buffer;
    buffer.reserve(1 << 20);
    if (format == Format::csv) {
        buffer += erloss::csv_header();
        buffer += '\n';
    }
    long long failed = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    bool any_margin = false;
    for (const auto& rep : reports) {
        if (!rep.passed) ++failed;
        if (rep.error.empty() && (!any_margin || rep.margin < min_margin)) {
            min_margin = rep.margin;
            any_margin = true;
        }
        switch (format) {
            case Format::plain:
                buffer += rep.passed ? "PASS " : "FAIL ";
                buffer += erloss::to_csv_row(rep);
                break;
            case Format::csv:
                buffer += erloss::to_csv_row(rep);
                break;
            case Format::json:
                buffer += erloss::to_json_line(rep);
                break;
        }
        buffer += '\n';
        if (buffer.size() > (1 << 20)) {
            std::cout << buffer;
            buffer.clear();
        }
    }
    std::cout << buffer;
    std::cout.flush();

    std::cerr << "verify: " << reports.size() << " checks, " << failed
              << " failed, min margin "
              << (any_margin ? format_number(min_margin) : "n/a") << '\n';
    return failed == 0 ? 0 : 1;
}

int cmd_table(const IntRange& range, const std::vector<double>& loads,
              Format format) {
    std::string buffer;
    if (format == Format::csv) {
        buffer += "n,lambda,blocking,phi,scaled_partial_sum\n";
    }
    for (long long n = range.first; n <= range.last; ++n) {
        for (double lambda : loads) {
            erloss::OfferedLoad load(lambda);
            const double blocking = erloss::erlang_b_int(n, load).value;
            const double phi = erloss::phi(n, load).value;
            const double scaled = erloss::scaled_partial_sum(n, load).scaled_value;
            switch (format) {
                case Format::plain:
                    buffer += std::to_string(n);
                    buffer += ' ';
                    buffer += format_number(lambda);
                    buffer += ' ';
                    buffer += format_number(blocking);
                    buffer += ' ';
                    buffer += format_number(phi);
                    buffer += ' ';
                    buffer += format_number(scaled);
                    break;
                case Format::csv:
                    buffer += std::to_string(n);
                    buffer += ',';
                    buffer += format_number(lambda);
                    buffer += ',';
                    buffer += format_number(blocking);
                    buffer += ',';
                    buffer += format_number(phi);
                    buffer += ',';
                    buffer += format_number(scaled);
                    break;
                case Format::json:
                    buffer += "{\"n\":";
                    buffer += std::to_string(n);
                    buffer += ",\"lambda\":";
                    buffer += json_number(lambda);
                    buffer += ",\"blocking\":";
                    buffer += json_number(blocking);
                    buffer += ",\"phi\":";
                    buffer += json_number(phi);
                    buffer += ",\"scaled_partial_sum\":";
                    buffer += json_number(scaled);
                    buffer += '}';
                    break;
            }
            buffer += '\n';
        }
    }
    std::cout << buffer;
    return 0;
}

int cmd_simulate(long long servers, double load_value, long long arrivals,
                 const std::string& seed_text, const std::string& service) {
    std::uint64_t seed;
    if (seed_text == "auto") {
        std::random_device device;
        seed = (static_cast<std::uint64_t>(device()) << 32) ^ device();
    } else {
        seed = std::stoull(seed_text);
    }

    erloss::SimConfig cfg{servers, erloss::OfferedLoad(load_value), arrivals,
                          seed,
                          service == "det" ? erloss::ServiceModel::deterministic
                                           : erloss::ServiceModel::exponential};
    const auto result = erloss::simulate(cfg);
    const double analytic = erloss::erlang_b_int(servers, cfg.load).value;
    double z_score = 0.0;
    if (result.std_error > 0.0) {
        z_score = (result.estimate - analytic) / result.std_error;
    } else if (result.estimate != analytic) {
        z_score = std::numeric_limits<double>::infinity();
    }

    std::cout << "{\"servers\":" << servers
              << ",\"lambda\":" << json_number(load_value)
              << ",\"arrivals\":" << arrivals << ",\"seed\":" << seed
              << ",\"blocked\":" << result.blocked
              << ",\"estimate\":" << json_number(result.estimate)
              << ",\"std_error\":" << json_number(result.std_error)
              << ",\"analytic\":" << json_number(analytic)
              << ",\"z_score\":" << json_number(z_score) << ",\"generator\":\""
              << result.generator << "\"}\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Erlang loss function toolkit"};
    app.require_subcommand(1);

    std::string format_name = "plain";
    app.add_option("--format", format_name, "Output format: plain, csv, json")
        ->capture_default_str();

    // blocking
    auto* blocking = app.add_subcommand(
        "blocking", "B(n, lambda); integer syntax uses the exact recursion, "
                    "decimal syntax the analytic continuation");
    std::string n_or_x;
    double load_value = 0.0;
    std::string method;
    double rel_tol = 1e-12;
    blocking->add_option("n-or-x", n_or_x, "Server count (e.g. 2 or 1.5)")
        ->required();
    blocking->add_option("--load", load_value, "Offered load in erlangs")
        ->required();
    blocking->add_option("--method", method,
                         "Force evaluation path: int or real");
    blocking->add_option("--rel-tol", rel_tol, "Quadrature tolerance")
        ->capture_default_str();

    // inverse
    auto* inverse = app.add_subcommand("inverse", "Dimensioning solvers");
    inverse->require_subcommand(1);
    double target = 0.0;
    long long servers = 0;
    double x_tol = 1e-9;
    bool round_trip = false;
    auto* inv_servers = inverse->add_subcommand(
        "servers", "Smallest integer n with B(n, lambda) <= target");
    inv_servers->add_option("--load", load_value)->required();
    inv_servers->add_option("--target", target)->required();
    inv_servers->add_flag("--round-trip", round_trip,
                          "Also print B at the solution minus the target");
    auto* inv_real = inverse->add_subcommand(
        "servers-real", "Real x with B(x, lambda) = target");
    inv_real->add_option("--load", load_value)->required();
    inv_real->add_option("--target", target)->required();
    inv_real->add_option("--x-tol", x_tol)->capture_default_str();
    inv_real->add_option("--rel-tol", rel_tol)->capture_default_str();
    inv_real->add_flag("--round-trip", round_trip);
    auto* inv_traffic = inverse->add_subcommand(
        "traffic", "Load lambda with B(n, lambda) = target");
    inv_traffic->add_option("--servers", servers)->required();
    inv_traffic->add_option("--target", target)->required();
    inv_traffic->add_option("--x-tol", x_tol)->capture_default_str();
    inv_traffic->add_flag("--round-trip", round_trip);

    // verify
    auto* verify = app.add_subcommand(
        "verify", "Check every inequality over a parameter sweep");
    erloss::SweepGrid grid = erloss::default_sweep_grid();
    std::string loads_text = "0.1,0.5,1,2,5,10,20,50,100";
    verify->add_option("--n-min", grid.n_min)->capture_default_str();
    verify->add_option("--n-max", grid.n_max)->capture_default_str();
    verify->add_option("--loads", loads_text, "Comma-separated load grid")
        ->capture_default_str();
    verify->add_option("--index-limit", grid.index_limit)
        ->capture_default_str();
    verify->add_option("--rel-tol", grid.quad.rel_tol)->capture_default_str();
    bool no_convexity = false;
    verify->add_flag("--no-convexity", no_convexity,
                     "Skip the continuation probes");

    // table
    auto* table = app.add_subcommand(
        "table", "Rows of (n, lambda, B, phi, scaled partial sum)");
    std::string n_range_text;
    table->add_option("--n", n_range_text, "Range, e.g. 0..100")->required();
    table->add_option("--loads", loads_text, "Comma-separated load grid")
        ->required();

    // simulate
    auto* simulate = app.add_subcommand(
        "simulate", "Monte Carlo loss-system estimate of B(servers, lambda)");
    long long arrivals = 1000000;
    std::string seed_text;
    std::string service = "exp";
    simulate->add_option("--servers", servers)->required();
    simulate->add_option("--load", load_value)->required();
    simulate->add_option("--arrivals", arrivals)->capture_default_str();
    simulate->add_option("--seed", seed_text, "64-bit seed, or auto")
        ->required();
    simulate->add_option("--service", service, "exp or det")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        const Format format = parse_format(format_name);
        if (blocking->parsed()) {
            if (!method.empty() && method != "int" && method != "real") {
                throw std::domain_error("--method must be int or real");
            }
            return cmd_blocking(n_or_x, load_value, method, rel_tol, format);
        }
        if (inverse->parsed()) {
            if (inv_servers->parsed()) {
                erloss::OfferedLoad load(load_value);
                erloss::BlockingTarget goal(target);
                const long long n = erloss::min_servers(load, goal);
                std::optional<double> residual;
                if (round_trip) {
                    residual = erloss::erlang_b_int(n, load).value - target;
                }
                print_inverse(format, "servers", static_cast<double>(n), true,
                              residual);
            } else if (inv_real->parsed()) {
                erloss::OfferedLoad load(load_value);
                erloss::BlockingTarget goal(target);
                erloss::SolveOptions opts;
                opts.x_tol = x_tol;
                erloss::QuadratureConfig quad;
                quad.rel_tol = rel_tol;
                const double x =
                    erloss::solve_servers_real(load, goal, opts, quad);
                std::optional<double> residual;
                if (round_trip) {
                    residual = erloss::erlang_b_real(x, load, quad).value - target;
                }
                print_inverse(format, "servers-real", x, false, residual);
            } else {
                erloss::BlockingTarget goal(target);
                erloss::SolveOptions opts;
                opts.x_tol = x_tol;
                const auto load = erloss::solve_traffic(servers, goal, opts);
                std::optional<double> residual;
                if (round_trip) {
                    residual =
                        erloss::erlang_b_int(servers, load).value - target;
                }
                print_inverse(format, "traffic", load.value(), false, residual);
            }
            return 0;
        }
        if (verify->parsed()) {
            grid.loads = parse_loads(loads_text);
            grid.convexity = !no_convexity;
            return cmd_verify(grid, format == Format::plain ? Format::plain
                                                            : format);
        }
        if (table->parsed()) {
            return cmd_table(parse_range(n_range_text), parse_loads(loads_text),
                             format);
        }
        if (simulate->parsed()) {
            if (service != "exp" && service != "det") {
                throw std::domain_error("--service must be exp or det");
            }
            return cmd_simulate(servers, load_value, arrivals, seed_text,
                                service);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
