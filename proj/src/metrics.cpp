#include "tsili/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "tsili/csv.hpp"
#include "tsili/random_baseline.hpp"

namespace tsili {

PredictionSet::PredictionSet(std::vector<PredictionRecord> records)
    : records_(std::move(records)) {
    std::unordered_set<std::string> names;
    has_sloc_ = !records_.empty();
    for (const PredictionRecord& rec : records_) {
        if (!names.insert(rec.name).second) {
            throw ConfigError("duplicate prediction name: \"" + rec.name + "\"");
        }
        if (rec.score < 0.0 || rec.score > 1.0 || std::isnan(rec.score)) {
            throw ConfigError("score out of [0,1] for \"" + rec.name + "\"");
        }
        if (rec.actual != 0 && rec.actual != 1) {
            throw ConfigError("actual label must be 0 or 1 for \"" + rec.name + "\"");
        }
        if (rec.actual == 1) ++n1_;
        if (!rec.sloc || *rec.sloc < 1) has_sloc_ = false;
    }
    ranking_.resize(records_.size());
    for (std::size_t i = 0; i < ranking_.size(); ++i) ranking_[i] = i;
    std::sort(ranking_.begin(), ranking_.end(), [this](std::size_t a, std::size_t b) {
        if (records_[a].score != records_[b].score) return records_[a].score > records_[b].score;
        return records_[a].name < records_[b].name;
    });
}

PredictionSet PredictionSet::load_csv(const std::filesystem::path& path) {
    CsvTable table = read_csv(path);
    int name_idx = table.column("name");
    int actual_idx = table.column("actual");
    int score_idx = table.column("score");
    int sloc_idx = table.column("sloc");
    if (name_idx < 0 || actual_idx < 0 || score_idx < 0) {
        throw SchemaError("prediction CSV needs name,actual,score columns: " + path.string());
    }
    std::vector<PredictionRecord> records;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        auto cell = [&](int idx) -> std::string {
            return (idx >= 0 && std::size_t(idx) < row.size()) ? row[idx] : std::string();
        };
        PredictionRecord rec;
        rec.name = cell(name_idx);
        try {
            rec.actual = std::stoi(cell(actual_idx));
            rec.score = std::stod(cell(score_idx));
        } catch (const std::exception&) {
            throw SchemaError(path.string() + " row " + std::to_string(r + 2) +
                              ": non-numeric actual/score");
        }
        std::string sloc = cell(sloc_idx);
        if (!sloc.empty()) {
            try {
                rec.sloc = std::stoll(sloc);
            } catch (const std::exception&) {
                throw SchemaError(path.string() + " row " + std::to_string(r + 2) +
                                  ": non-numeric sloc");
            }
        }
        records.push_back(std::move(rec));
    }
    return PredictionSet(std::move(records));
}

std::optional<double> ConfusionMatrix::precision() const {
    if (tp + fp == 0) return std::nullopt;
    return double(tp) / double(tp + fp);
}

std::optional<double> ConfusionMatrix::recall() const {
    if (tp + fn == 0) return std::nullopt;
    return double(tp) / double(tp + fn);
}

ConfusionMatrix confusion(const PredictionSet& preds, double threshold) {
    ConfusionMatrix cm;
    for (const PredictionRecord& rec : preds.records()) {
        bool predicted = rec.score > threshold;  // score == threshold predicts clean
        if (predicted) {
            (rec.actual ? cm.tp : cm.fp)++;
        } else {
            (rec.actual ? cm.fn : cm.tn)++;
        }
    }
    return cm;
}

double f1(const ConfusionMatrix& cm) {
    double p = cm.precision().value_or(0.0);
    double r = cm.recall().value_or(0.0);
    if (p + r == 0.0) return 0.0;
    return 2.0 * p * r / (p + r);
}

std::optional<double> er(const ConfusionMatrix& cm) {
    // Reduced effort vs a random model achieving the same recall: that model
    // inspects recall*N modules, ours inspects tp+fp, so ER = 1 - m/r with
    // m the inspected fraction.
    auto r = cm.recall();
    if (!r || *r == 0.0) return std::nullopt;
    return 1.0 - cm.inspected_fraction() / *r;
}

std::optional<double> ri(const ConfusionMatrix& cm) {
    auto p = cm.precision();
    if (!p) return std::nullopt;  // nothing predicted defective
    double q = cm.q();
    if (q == 0.0) return std::nullopt;
    return *p / q - 1.0;
}

std::optional<double> auc(const PredictionSet& preds) {
    const auto& records = preds.records();
    std::size_t n1 = preds.defective_count();
    std::size_t n0 = records.size() - n1;
    if (n1 == 0 || n0 == 0) return std::nullopt;

    // Mann–Whitney: average tied ranks, then U / (n1*n0).
    std::vector<std::size_t> order(records.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return records[a].score < records[b].score;
    });

    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && records[order[j]].score == records[order[i]].score) ++j;
        double avg_rank = 0.5 * double(i + 1 + j);  // ranks are 1-based
        for (std::size_t k = i; k < j; ++k) {
            if (records[order[k]].actual == 1) rank_sum_pos += avg_rank;
        }
        i = j;
    }
    double u = rank_sum_pos - double(n1) * double(n1 + 1) / 2.0;
    return u / (double(n1) * double(n0));
}

namespace {

double curve_area(const std::vector<std::size_t>& order, const PredictionSet& preds,
                  long long total_sloc, std::size_t n1) {
    // Trapezoids over (cumulative sloc fraction, cumulative defect fraction),
    // starting at the origin.
    const auto& records = preds.records();
    double area = 0.0;
    double x_prev = 0.0, y_prev = 0.0;
    long long sloc_cum = 0;
    std::size_t defects_cum = 0;
    for (std::size_t idx : order) {
        sloc_cum += *records[idx].sloc;
        defects_cum += std::size_t(records[idx].actual);
        double x = double(sloc_cum) / double(total_sloc);
        double y = double(defects_cum) / double(n1);
        area += (x - x_prev) * (y + y_prev) / 2.0;
        x_prev = x;
        y_prev = y;
    }
    return area;
}

}  // namespace

RankMetrics rank_eval(const PredictionSet& preds) {
    RankMetrics out;
    const auto& records = preds.records();
    const auto& ranking = preds.ranking();
    std::size_t n1 = preds.defective_count();

    if (n1 > 0) {
        double ap = 0.0;
        std::size_t defectives_seen = 0;
        for (std::size_t i = 0; i < ranking.size(); ++i) {
            if (records[ranking[i]].actual == 1) {
                ++defectives_seen;
                ap += double(defectives_seen) / double(i + 1);
                if (!out.rr) out.rr = 1.0 / double(i + 1);
            }
        }
        out.ap = ap / double(n1);
    }

    if (n1 > 0 && preds.has_sloc()) {
        long long total_sloc = 0;
        for (const PredictionRecord& rec : records) total_sloc += *rec.sloc;
        if (total_sloc > 0) {
            // Optimal/worst orderings by actual defect density label/sloc.
            auto density_order = [&](bool descending) {
                std::vector<std::size_t> order(records.size());
                for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
                std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    double da = double(records[a].actual) / double(*records[a].sloc);
                    double db = double(records[b].actual) / double(*records[b].sloc);
                    if (da != db) return descending ? da > db : da < db;
                    return records[a].name < records[b].name;
                });
                return order;
            };
            double area_model = curve_area(ranking, preds, total_sloc, n1);
            double area_opt = curve_area(density_order(true), preds, total_sloc, n1);
            double area_worst = curve_area(density_order(false), preds, total_sloc, n1);
            if (area_opt != area_worst) {
                out.popt = 1.0 - (area_opt - area_model) / (area_opt - area_worst);
            }

            long long budget_num = total_sloc;  // inspect while cum*5 <= total
            long long sloc_cum = 0;
            std::size_t found = 0;
            for (std::size_t idx : ranking) {
                if ((sloc_cum + *records[idx].sloc) * 5 > budget_num) break;
                sloc_cum += *records[idx].sloc;
                found += std::size_t(records[idx].actual);
            }
            out.acc20 = double(found) / double(n1);
        }
    }
    return out;
}

const char* to_string(Indicator ind) {
    switch (ind) {
        case Indicator::F1: return "F1";
        case Indicator::AUC: return "AUC";
        case Indicator::ER: return "ER";
        case Indicator::RI: return "RI";
        case Indicator::AP: return "AP";
        case Indicator::RR: return "RR";
        case Indicator::Popt: return "Popt";
        case Indicator::ACC: return "ACC";
    }
    return "?";
}

namespace {

// RR(random) for large N: u_i = C(N-i, n1-1)/C(N, n1) via the stable
// recurrence u_{i+1} = u_i * (N-i-n1+1)/(N-i), starting at u_1 = n1/N.
double random_rr_longdouble(long long total, long long defective) {
    long double u = static_cast<long double>(defective) / static_cast<long double>(total);
    long double sum = 0.0L;
    for (long long i = 1; i <= total - defective + 1; ++i) {
        sum += u / static_cast<long double>(i);
        u *= static_cast<long double>(total - i - defective + 1) /
             static_cast<long double>(total - i);
    }
    return static_cast<double>(sum);
}

double random_ap_longdouble(long long total, long long defective) {
    if (total == 1) return 1.0;
    long double harmonic = 0.0L;
    for (long long i = 1; i <= total; ++i) harmonic += 1.0L / static_cast<long double>(i);
    long double n = static_cast<long double>(total);
    long double k = static_cast<long double>(defective);
    return static_cast<double>((harmonic + (k - 1) / (n - 1) * (n - harmonic)) / n);
}

}  // namespace

std::optional<double> random_baseline(Indicator ind, long long total, long long defective) {
    if (total < 1 || defective < 0 || defective > total) {
        throw ConfigError("random_baseline: need 0 <= defective <= total, total >= 1");
    }
    double q = double(defective) / double(total);
    switch (ind) {
        case Indicator::F1: return 2.0 * q * 0.5 / (q + 0.5);
        case Indicator::AUC: return 0.5;
        case Indicator::ER: return 0.0;
        case Indicator::RI: return 0.0;
        case Indicator::Popt: return 0.5;
        case Indicator::ACC: return 0.2;
        case Indicator::AP:
            if (defective == 0) return std::nullopt;
            if (total <= kExactBaselineLimit) {
                return random_ap_rational(total, defective).get_d();
            }
            return random_ap_longdouble(total, defective);
        case Indicator::RR:
            if (defective == 0) return std::nullopt;
            if (total <= kExactBaselineLimit) {
                return random_rr_rational(total, defective).get_d();
            }
            return random_rr_longdouble(total, defective);
    }
    return std::nullopt;
}

std::optional<double> diff(std::optional<double> perf_nc, std::optional<double> perf_cc) {
    if (!perf_nc || !perf_cc || *perf_cc == 0.0) return std::nullopt;
    return (*perf_nc - *perf_cc) / *perf_cc * 100.0;
}

std::optional<double> pgr(std::optional<double> perf_nc, std::optional<double> perf_cc,
                          std::optional<double> perf_random) {
    if (!perf_nc || !perf_cc || !perf_random) return std::nullopt;
    double gain_cc = *perf_cc - *perf_random;
    if (gain_cc == 0.0) return std::nullopt;
    return ((*perf_nc - *perf_random) - gain_cc) / gain_cc * 100.0;
}

}  // namespace tsili
