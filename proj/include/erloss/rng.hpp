#ifndef ERLOSS_RNG_HPP
#define ERLOSS_RNG_HPP

#include <cstdint>

namespace erloss {

// splitmix64 (Steele/Lea/Flood splittable-generator finalizer, as published
// by Vigna).  Output i for seed s is mix(s + (i+1) * 0x9E3779B97F4A7C15)
// with
//   mix(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//           z ^= z >> 27; z *= 0x94D049BB133111EB;  return z ^ (z >> 31);
// The stream is a pure function of (seed, counter), so simulation results
// are reproducible by any implementation of the same recipe.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0, 1); safe to pass through log().
    double uniform01() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

inline const char* generator_name() { return "splitmix64"; }

}  // namespace erloss

#endif
