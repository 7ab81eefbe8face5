#include "tsili/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <vector>

#include "tsili/common.hpp"

namespace tsili {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // One splitmix64 step over a mixed word; avoids correlated streams for
    // adjacent replicate indices.
    SplitMix64 mixer(seed ^ (0x632be59bd9b4e019ULL * (stream + 1)));
    return mixer.next();
}

namespace {

double percentile_linear(const std::vector<double>& sorted, double p) {
    if (sorted.size() == 1) return sorted.front();
    double h = p * double(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(h);
    if (lo >= sorted.size() - 1) return sorted.back();
    double frac = h - double(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

BootstrapCi bootstrap_ci(std::span<const double> values, int replicates, double level,
                         std::uint64_t seed, int threads) {
    if (values.empty()) throw ConfigError("bootstrap_ci: empty input");
    if (replicates < 1) throw ConfigError("bootstrap_ci: replicates must be >= 1");
    if (level <= 0.0 || level >= 1.0) throw ConfigError("bootstrap_ci: level must be in (0,1)");

    const std::size_t n = values.size();
    std::vector<double> stats(static_cast<std::size_t>(replicates));

    auto run_range = [&](int begin, int end) {
        for (int r = begin; r < end; ++r) {
            SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
            double sum = 0.0;
            for (std::size_t k = 0; k < n; ++k) sum += values[rng.next_below(n)];
            stats[static_cast<std::size_t>(r)] = sum / double(n);
        }
    };

    if (threads <= 1) {
        run_range(0, replicates);
    } else {
        int chunk = (replicates + threads - 1) / threads;
        std::vector<std::future<void>> futures;
        for (int t = 0; t < threads; ++t) {
            int begin = t * chunk;
            int end = std::min(replicates, begin + chunk);
            if (begin >= end) break;
            futures.push_back(std::async(std::launch::async, run_range, begin, end));
        }
        for (auto& f : futures) f.get();
    }

    BootstrapCi ci;
    ci.replicates = replicates;
    ci.level = level;
    ci.seed = seed;

    double raw_sum = 0.0;
    for (double v : values) raw_sum += v;
    ci.sample_mean = raw_sum / double(n);

    double mean = 0.0;
    for (double s : stats) mean += s;
    mean /= double(stats.size());
    ci.replicate_mean = mean;

    double var = 0.0;
    for (double s : stats) var += (s - mean) * (s - mean);
    ci.replicate_stddev = stats.size() > 1 ? std::sqrt(var / double(stats.size() - 1)) : 0.0;

    std::vector<double> sorted(stats);
    std::sort(sorted.begin(), sorted.end());
    double alpha = (1.0 - level) / 2.0;
    ci.lower = percentile_linear(sorted, alpha);
    ci.upper = percentile_linear(sorted, 1.0 - alpha);
    return ci;
}

bool significant(const BootstrapCi& ci) { return ci.lower > 0.0 || ci.upper < 0.0; }

}  // namespace tsili
