#ifndef ERLOSS_SIMULATOR_HPP
#define ERLOSS_SIMULATOR_HPP

#include <cstdint>
#include <string>

#include <erloss/core.hpp>

namespace erloss {

// Service-time model.  Blocking in a loss system depends on the service
// distribution only through its mean, so both modes estimate the same
// probability; the exponential mode is the plain Markovian reading and
// the deterministic mode probes that insensitivity.
enum class ServiceModel { exponential, deterministic };

struct SimConfig {
    long long servers = 0;
    OfferedLoad load;
    long long arrivals = 1000000;
    std::uint64_t seed = 0;
    ServiceModel service = ServiceModel::exponential;
};

struct SimResult {
    long long offered = 0;
    long long blocked = 0;
    double estimate = 0.0;   // blocked / offered
    double std_error = 0.0;  // sqrt(estimate (1 - estimate) / offered)
    std::string generator;   // RNG algorithm the stream came from
};

// Event-driven n-circuit loss system: Poisson arrivals at the offered
// rate, unit-mean service, blocked calls cleared, system starting empty
// (the startup bias is O(servers/arrivals)).  Deterministic given the
// seed; the estimate is unbiased for B(servers, load).
SimResult simulate(const SimConfig& cfg);

}  // namespace erloss

#endif
