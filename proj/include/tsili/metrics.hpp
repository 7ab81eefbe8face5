#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tsili/common.hpp"

namespace tsili {

struct PredictionRecord {
    std::string name;
    int actual = 0;  // 0 = clean, 1 = defective
    double score = 0.0;
    std::optional<long long> sloc;
};

/// Scored test instances. Ranking is by descending score, ties broken by
/// ascending name, so every downstream metric is deterministic.
class PredictionSet {
  public:
    explicit PredictionSet(std::vector<PredictionRecord> records);

    static PredictionSet load_csv(const std::filesystem::path& path);  // name,actual,score,sloc

    const std::vector<PredictionRecord>& records() const { return records_; }
    const std::vector<std::size_t>& ranking() const { return ranking_; }
    std::size_t size() const { return records_.size(); }
    std::size_t defective_count() const { return n1_; }
    bool has_sloc() const { return has_sloc_; }

  private:
    std::vector<PredictionRecord> records_;
    std::vector<std::size_t> ranking_;
    std::size_t n1_ = 0;
    bool has_sloc_ = false;
};

struct ConfusionMatrix {
    long long tp = 0, fp = 0, tn = 0, fn = 0;

    long long total() const { return tp + fp + tn + fn; }
    long long defective() const { return tp + fn; }
    // q: actual defect fraction (tp+fn)/N.
    double q() const { return total() ? double(tp + fn) / double(total()) : 0.0; }
    // m: inspected fraction (tp+fp)/N — the effort the model asks for.
    double inspected_fraction() const { return total() ? double(tp + fp) / double(total()) : 0.0; }
    std::optional<double> precision() const;
    std::optional<double> recall() const;
};

/// Classification outcome at `threshold`: predicted defective iff
/// score > threshold (a score equal to the threshold predicts clean).
ConfusionMatrix confusion(const PredictionSet& preds, double threshold = 0.5);

// Classification indicators. F1 is 0 when p + r = 0. ER compares the model's
// inspected fraction with a random model achieving the same recall
// (NA when recall is 0); RI is p/q - 1 (NA when q = 0 or nothing is
// predicted defective).
double f1(const ConfusionMatrix& cm);
std::optional<double> er(const ConfusionMatrix& cm);
std::optional<double> ri(const ConfusionMatrix& cm);

/// Rank-based AUC (Mann–Whitney; ties credited 0.5). NA when the set has no
/// defective or no clean instance.
std::optional<double> auc(const PredictionSet& preds);

struct RankMetrics {
    std::optional<double> ap, rr, popt, acc20;
};

/// Ranking indicators over the deterministic ranking. AP and RR are NA when
/// there is no defective instance; Popt and ACC20 additionally require sloc
/// on every record and are NA otherwise.
RankMetrics rank_eval(const PredictionSet& preds);

enum class Indicator { F1, AUC, ER, RI, AP, RR, Popt, ACC };

const char* to_string(Indicator ind);

/// Closed-form expected performance of a random model on a test set with
/// `total` instances of which `defective` are defective. AP/RR are exact
/// combinatorial expectations; NA where undefined (e.g. AP/RR with no
/// defectives).
std::optional<double> random_baseline(Indicator ind, long long total, long long defective);

std::optional<double> diff(std::optional<double> perf_nc, std::optional<double> perf_cc);
std::optional<double> pgr(std::optional<double> perf_nc, std::optional<double> perf_cc,
                          std::optional<double> perf_random);

}  // namespace tsili
