#include "tsili/impact.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "tsili/csv.hpp"

namespace tsili {

std::string Cutoff::label() const {
    switch (kind) {
        case CutoffKind::Binary: return "binary";
        case CutoffKind::SlocFraction: return "size20";
        case CutoffKind::TopFraction: {
            int pct = static_cast<int>(std::lround(fraction * 100));
            return "top" + std::to_string(pct);
        }
    }
    return "?";
}

Cutoff parse_cutoff(const std::string& token) {
    if (token == "binary") return {CutoffKind::Binary, 0.0};
    if (token == "size20") return {CutoffKind::SlocFraction, 0.2};
    if (token == "top10") return {CutoffKind::TopFraction, 0.1};
    if (token == "top20") return {CutoffKind::TopFraction, 0.2};
    if (token == "top30") return {CutoffKind::TopFraction, 0.3};
    throw ConfigError("unknown cutoff \"" + token +
                      "\" (expected binary|size20|top10|top20|top30)");
}

std::vector<Cutoff> default_cutoffs() {
    return {parse_cutoff("binary"), parse_cutoff("size20"), parse_cutoff("top10"),
            parse_cutoff("top20"), parse_cutoff("top30")};
}

std::set<std::string> select_pad(const PredictionSet& preds, const Cutoff& cutoff) {
    const auto& records = preds.records();
    const auto& ranking = preds.ranking();
    std::set<std::string> pad;

    switch (cutoff.kind) {
        case CutoffKind::Binary:
            for (const PredictionRecord& rec : records) {
                if (rec.score > 0.5) pad.insert(rec.name);
            }
            break;
        case CutoffKind::SlocFraction: {
            if (!preds.has_sloc()) {
                throw ConfigError("cutoff " + cutoff.label() + " requires sloc on every record");
            }
            long long total = 0;
            for (const PredictionRecord& rec : records) total += *rec.sloc;
            // longest prefix with cumulative sloc <= fraction * total
            double budget = cutoff.fraction * double(total);
            long long cum = 0;
            for (std::size_t idx : ranking) {
                if (double(cum + *records[idx].sloc) > budget) break;
                cum += *records[idx].sloc;
                pad.insert(records[idx].name);
            }
            break;
        }
        case CutoffKind::TopFraction: {
            std::size_t take =
                static_cast<std::size_t>(std::floor(cutoff.fraction * double(records.size())));
            for (std::size_t i = 0; i < take && i < ranking.size(); ++i) {
                pad.insert(records[ranking[i]].name);
            }
            break;
        }
    }
    return pad;
}

std::optional<double> dtp(const std::set<std::string>& tp_nc, const std::set<std::string>& tp_cc) {
    std::size_t inter = 0;
    for (const std::string& name : tp_nc) inter += tp_cc.count(name);
    std::size_t uni = tp_nc.size() + tp_cc.size() - inter;
    if (uni == 0) return std::nullopt;
    return double(uni - inter) / double(uni);
}

ShiftReport shift_ranks(const std::vector<std::string>& importance_cc,
                        const std::vector<std::string>& importance_nc, int top_k) {
    ShiftReport report;
    int limit = std::min<int>(top_k, static_cast<int>(importance_cc.size()));
    for (int k = 1; k <= limit; ++k) {
        const std::string& feature = importance_cc[static_cast<std::size_t>(k - 1)];
        auto it = std::find(importance_nc.begin(), importance_nc.end(), feature);
        ShiftEntry entry;
        entry.k = k;
        if (it == importance_nc.end()) {
            entry.oom = true;
        } else {
            int rank_nc = static_cast<int>(it - importance_nc.begin()) + 1;
            entry.shift = k - rank_nc;
        }
        report.entries.push_back(entry);
    }
    return report;
}

const char* to_string(ShiftBin bin) {
    switch (bin) {
        case ShiftBin::Positive: return "positive";
        case ShiftBin::Zero: return "zero";
        case ShiftBin::MinusOneOrTwo: return "minus1or2";
        case ShiftBin::MinusThreeOrLess: return "minus3orLess";
        case ShiftBin::Oom: return "oom";
    }
    return "?";
}

ShiftDistribution shift_distribution(const std::vector<ShiftReport>& reports, int top_k) {
    if (reports.empty()) throw ConfigError("shift_distribution: no reports");
    ShiftDistribution dist;
    for (int k = 1; k <= top_k; ++k) {
        std::map<ShiftBin, std::size_t> counts;
        std::size_t total = 0;
        for (const ShiftReport& report : reports) {
            for (const ShiftEntry& entry : report.entries) {
                if (entry.k != k) continue;
                ++total;
                ShiftBin bin;
                if (entry.oom) {
                    bin = ShiftBin::Oom;
                } else if (entry.shift > 0) {
                    bin = ShiftBin::Positive;
                } else if (entry.shift == 0) {
                    bin = ShiftBin::Zero;
                } else if (entry.shift >= -2) {
                    bin = ShiftBin::MinusOneOrTwo;
                } else {
                    bin = ShiftBin::MinusThreeOrLess;
                }
                ++counts[bin];
            }
        }
        if (total == 0) continue;
        for (ShiftBin bin : {ShiftBin::Positive, ShiftBin::Zero, ShiftBin::MinusOneOrTwo,
                             ShiftBin::MinusThreeOrLess, ShiftBin::Oom}) {
            dist.bins[k][bin] = counts.count(bin) ? double(counts[bin]) / double(total) : 0.0;
        }
    }
    return dist;
}

void ShiftDistribution::export_csv(const std::filesystem::path& path) const {
    CsvTable table;
    table.header = {"k", "bin", "proportion"};
    for (const auto& [k, row] : bins) {
        for (const auto& [bin, proportion] : row) {
            table.rows.push_back({std::to_string(k), to_string(bin), std::to_string(proportion)});
        }
    }
    write_csv(path, table);
}

std::vector<std::string> load_importance_csv(const std::filesystem::path& path) {
    CsvTable table = read_csv(path);
    int rank_idx = table.column("rank");
    int feature_idx = table.column("feature");
    if (rank_idx < 0 || feature_idx < 0) {
        throw SchemaError("importance CSV needs rank,feature columns: " + path.string());
    }
    std::vector<std::pair<int, std::string>> ranked;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        try {
            ranked.emplace_back(std::stoi(table.rows[r][static_cast<std::size_t>(rank_idx)]),
                                table.rows[r][static_cast<std::size_t>(feature_idx)]);
        } catch (const std::exception&) {
            throw SchemaError(path.string() + " row " + std::to_string(r + 2) +
                              ": non-numeric rank");
        }
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<std::string> features;
    features.reserve(ranked.size());
    for (auto& [rank, feature] : ranked) features.push_back(std::move(feature));
    return features;
}

}  // namespace tsili
