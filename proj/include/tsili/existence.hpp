#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsili/dataset.hpp"

namespace tsili {

struct ExistenceCounts {
    std::size_t total = 0, buggy = 0, clean = 0;
    std::size_t yes_all = 0, yes_buggy = 0, yes_clean = 0;
    std::size_t na = 0;
};

// Prevalence ratios for one version; a ratio is NA when its denominator is
// 0. NA-flagged instances count toward denominators (they are instances)
// but never toward numerators.
struct ExistenceReport {
    std::string version;
    std::optional<double> ilin_all, ilin_buggy, ilin_clean;
    ExistenceCounts counts;
};

ExistenceReport existence_ratios(const VersionDataset& dataset);

struct RatioSummary {
    std::size_t versions_nonzero = 0;  // versions where the ratio is defined and != 0
    std::size_t versions_total = 0;
    std::optional<double> mean, min, max;  // over versions where defined
};

struct SummaryReport {
    std::string dataset;
    RatioSummary all, buggy, clean;
    std::vector<ExistenceReport> versions;
};

SummaryReport aggregate(const std::string& dataset_name,
                        const std::vector<ExistenceReport>& reports);

// Round-half-even to integer percent (presentation only; JSON carries the
// raw ratios).
int percent_round_half_even(double ratio);

std::string existence_markdown(const std::vector<SummaryReport>& summaries);
std::string existence_json(const std::vector<SummaryReport>& summaries);

}  // namespace tsili
