#include "tsili/existence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tsili {

ExistenceReport existence_ratios(const VersionDataset& dataset) {
    ExistenceReport report;
    report.version = dataset.version;
    ExistenceCounts& c = report.counts;
    for (const Instance& inst : dataset.instances) {
        if (inst.il_flag == IlFlag::Unset) {
            throw StateError("existence_ratios: instance \"" + inst.name +
                             "\" has no inconsistent-label flag");
        }
        ++c.total;
        (inst.label ? c.buggy : c.clean)++;
        if (inst.il_flag == IlFlag::Na) ++c.na;
        if (inst.il_flag == IlFlag::Yes) {
            ++c.yes_all;
            (inst.label ? c.yes_buggy : c.yes_clean)++;
        }
    }
    if (c.total > 0) report.ilin_all = double(c.yes_all) / double(c.total);
    if (c.buggy > 0) report.ilin_buggy = double(c.yes_buggy) / double(c.buggy);
    if (c.clean > 0) report.ilin_clean = double(c.yes_clean) / double(c.clean);
    return report;
}

namespace {

RatioSummary summarize(const std::vector<ExistenceReport>& reports,
                       std::optional<double> ExistenceReport::* ratio) {
    RatioSummary s;
    s.versions_total = reports.size();
    double sum = 0.0;
    std::size_t defined = 0;
    for (const ExistenceReport& r : reports) {
        const auto& v = r.*ratio;
        if (!v) continue;
        ++defined;
        sum += *v;
        if (*v != 0.0) ++s.versions_nonzero;
        s.min = s.min ? std::min(*s.min, *v) : *v;
        s.max = s.max ? std::max(*s.max, *v) : *v;
    }
    if (defined > 0) s.mean = sum / double(defined);
    return s;
}

nlohmann::json ratio_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

nlohmann::json summary_json(const RatioSummary& s) {
    return {{"versionsNonzero", s.versions_nonzero},
            {"versionsTotal", s.versions_total},
            {"mean", ratio_json(s.mean)},
            {"min", ratio_json(s.min)},
            {"max", ratio_json(s.max)}};
}

std::string pct(const std::optional<double>& v) {
    if (!v) return "NA";
    return std::to_string(percent_round_half_even(*v)) + "%";
}

std::string ratio_cell(const RatioSummary& s) {
    std::ostringstream out;
    out << pct(s.mean) << " (" << pct(s.min) << "~" << pct(s.max) << ")";
    return out.str();
}

std::string count_cell(const RatioSummary& s) {
    std::ostringstream out;
    out << s.versions_nonzero << "/" << s.versions_total;
    return out.str();
}

}  // namespace

SummaryReport aggregate(const std::string& dataset_name,
                        const std::vector<ExistenceReport>& reports) {
    if (reports.empty()) throw ConfigError("aggregate: no version reports");
    SummaryReport summary;
    summary.dataset = dataset_name;
    summary.all = summarize(reports, &ExistenceReport::ilin_all);
    summary.buggy = summarize(reports, &ExistenceReport::ilin_buggy);
    summary.clean = summarize(reports, &ExistenceReport::ilin_clean);
    summary.versions = reports;
    return summary;
}

int percent_round_half_even(double ratio) {
    double scaled = ratio * 100.0;
    double floor_v = std::floor(scaled);
    double frac = scaled - floor_v;
    if (frac > 0.5) return int(floor_v) + 1;
    if (frac < 0.5) return int(floor_v);
    long long below = static_cast<long long>(floor_v);
    return (below % 2 == 0) ? int(below) : int(below) + 1;
}

std::string existence_markdown(const std::vector<SummaryReport>& summaries) {
    std::ostringstream out;
    out << "| Dataset | #versions(ILinAll != 0)/#versions | Average ILinAll (range) | "
           "#versions(ILinBuggy != 0)/#versions | Average ILinBuggy (range) | "
           "#versions(ILinClean != 0)/#versions | Average ILinClean (range) |\n";
    out << "|---|---|---|---|---|---|---|\n";
    for (const SummaryReport& s : summaries) {
        out << "| " << s.dataset << " | " << count_cell(s.all) << " | " << ratio_cell(s.all)
            << " | " << count_cell(s.buggy) << " | " << ratio_cell(s.buggy) << " | "
            << count_cell(s.clean) << " | " << ratio_cell(s.clean) << " |\n";
    }
    if (summaries.size() > 1) {
        // overall rows across datasets, versions weighted equally
        std::vector<ExistenceReport> all_versions;
        for (const SummaryReport& s : summaries) {
            all_versions.insert(all_versions.end(), s.versions.begin(), s.versions.end());
        }
        SummaryReport overall = aggregate("All datasets", all_versions);
        out << "| " << overall.dataset << " | " << count_cell(overall.all) << " | "
            << ratio_cell(overall.all) << " | " << count_cell(overall.buggy) << " | "
            << ratio_cell(overall.buggy) << " | " << count_cell(overall.clean) << " | "
            << ratio_cell(overall.clean) << " |\n";
    }
    return out.str();
}

std::string existence_json(const std::vector<SummaryReport>& summaries) {
    nlohmann::json j;
    j["toolVersion"] = kToolVersion;
    j["datasets"] = nlohmann::json::array();
    for (const SummaryReport& s : summaries) {
        nlohmann::json versions = nlohmann::json::array();
        for (const ExistenceReport& r : s.versions) {
            versions.push_back({{"version", r.version},
                                {"ilinAll", ratio_json(r.ilin_all)},
                                {"ilinBuggy", ratio_json(r.ilin_buggy)},
                                {"ilinClean", ratio_json(r.ilin_clean)},
                                {"counts",
                                 {{"total", r.counts.total},
                                  {"buggy", r.counts.buggy},
                                  {"clean", r.counts.clean},
                                  {"yesAll", r.counts.yes_all},
                                  {"yesBuggy", r.counts.yes_buggy},
                                  {"yesClean", r.counts.yes_clean},
                                  {"na", r.counts.na}}}});
        }
        j["datasets"].push_back({{"dataset", s.dataset},
                                 {"ilinAll", summary_json(s.all)},
                                 {"ilinBuggy", summary_json(s.buggy)},
                                 {"ilinClean", summary_json(s.clean)},
                                 {"versions", versions}});
    }
    return j.dump(2);
}

}  // namespace tsili
