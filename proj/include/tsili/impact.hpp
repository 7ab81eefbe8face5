#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tsili/metrics.hpp"

namespace tsili {

// The five PAD cut-offs: binary (score > 0.5), 20% of total SLOC, and the
// top 10/20/30% ranked instances.
enum class CutoffKind { Binary, SlocFraction, TopFraction };

struct Cutoff {
    CutoffKind kind = CutoffKind::Binary;
    double fraction = 0.0;

    std::string label() const;
};

// Tokens: binary, size20, top10, top20, top30.
Cutoff parse_cutoff(const std::string& token);
std::vector<Cutoff> default_cutoffs();

/// Names Predicted As Defective under the cut-off. SLOC cut-offs take the
/// longest ranking prefix whose cumulative sloc stays within the budget and
/// throw ConfigError when sloc is missing; top-fraction takes the first
/// floor(f*N).
std::set<std::string> select_pad(const PredictionSet& preds, const Cutoff& cutoff);

/// Difference in True Positives: 1 - |A∩B| / |A∪B|; NA when both are empty.
std::optional<double> dtp(const std::set<std::string>& tp_nc, const std::set<std::string>& tp_cc);

struct ShiftEntry {
    int k = 0;  // 1-based rank in CC
    bool oom = false;
    int shift = 0;  // k - rank(feature, NC); meaningful only when !oom
};

struct ShiftReport {
    std::vector<ShiftEntry> entries;  // one per rank 1..min(topK, |CC|)
};

/// Rank displacement of CC's top-k features within NC's ranking; OOM when a
/// feature is absent from NC.
ShiftReport shift_ranks(const std::vector<std::string>& importance_cc,
                        const std::vector<std::string>& importance_nc, int top_k = 3);

enum class ShiftBin { Positive, Zero, MinusOneOrTwo, MinusThreeOrLess, Oom };

const char* to_string(ShiftBin bin);

struct ShiftDistribution {
    // proportions per k (1-based key), each row summing to 1
    std::map<int, std::map<ShiftBin, double>> bins;

    void export_csv(const std::filesystem::path& path) const;  // k,bin,proportion
};

ShiftDistribution shift_distribution(const std::vector<ShiftReport>& reports, int top_k = 3);

/// Feature ranking from a `rank,feature` CSV (sorted by rank ascending).
std::vector<std::string> load_importance_csv(const std::filesystem::path& path);

}  // namespace tsili
