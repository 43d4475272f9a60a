#include <erloss/simulator.hpp>

#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include <erloss/rng.hpp>

namespace erloss {

SimResult simulate(const SimConfig& cfg) {
    if (cfg.servers < 0) {
        throw std::domain_error("simulate requires servers >= 0");
    }
    if (cfg.arrivals < 1) {
        throw std::domain_error("simulate requires arrivals >= 1");
    }

    SplitMix64 rng(cfg.seed);
    const double rate = cfg.load.value();
    std::priority_queue<double, std::vector<double>, std::greater<double>>
        departures;

    double now = 0.0;
    long long blocked = 0;
    for (long long i = 0; i < cfg.arrivals; ++i) {
        now += -std::log(rng.uniform01()) / rate;
        while (!departures.empty() && departures.top() <= now) {
            departures.pop();
        }
        if (static_cast<long long>(departures.size()) < cfg.servers) {
            const double service = cfg.service == ServiceModel::deterministic
                                       ? 1.0
                                       : -std::log(rng.uniform01());
            departures.push(now + service);
        } else {
            ++blocked;
        }
    }

    SimResult result;
    result.offered = cfg.arrivals;
    result.blocked = blocked;
    result.estimate =
        static_cast<double>(blocked) / static_cast<double>(cfg.arrivals);
    result.std_error = std::sqrt(result.estimate * (1.0 - result.estimate) /
                                 static_cast<double>(cfg.arrivals));
    result.generator = generator_name();
    return result;
}

}  // namespace erloss
