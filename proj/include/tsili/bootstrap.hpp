#pragma once

#include <cstdint>
#include <span>

namespace tsili {

// splitmix64: fixed algorithm so resampling is bit-identical across
// platforms and standard-library versions.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d4a2ca9f6d2e0cULL;
        return z ^ (z >> 31);
    }

    // Bounded draw; modulo bias is < 2^-40 for the sample sizes in scope.
    std::size_t next_below(std::size_t bound) {
        return static_cast<std::size_t>(next() % static_cast<std::uint64_t>(bound));
    }
};

// Independent per-replicate stream, so serial and parallel execution agree
// bit for bit.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct BootstrapCi {
    double sample_mean = 0;     // mean of the raw input values
    double replicate_mean = 0;  // mean of the replicate statistics
    double replicate_stddev = 0;
    double lower = 0;
    double upper = 0;
    int replicates = 0;
    double level = 0.95;
    std::uint64_t seed = 0;
};

/// Percentile bootstrap for the mean: `replicates` resamples with
/// replacement, interval at ((1-level)/2, 1-(1-level)/2) percentiles with
/// linear interpolation between order statistics. Deterministic under a
/// fixed seed regardless of `threads`. Throws ConfigError on empty input.
BootstrapCi bootstrap_ci(std::span<const double> values, int replicates = 1000,
                         double level = 0.95, std::uint64_t seed = 0, int threads = 1);

/// Significance per the closed-interval rule: significant iff 0 is outside
/// [lower, upper] (0 exactly at an endpoint counts as inside).
bool significant(const BootstrapCi& ci);

}  // namespace tsili
