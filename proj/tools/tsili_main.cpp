#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tsili/bootstrap.hpp"
#include "tsili/code_index.hpp"
#include "tsili/common.hpp"
#include "tsili/dataset.hpp"
#include "tsili/existence.hpp"
#include "tsili/impact.hpp"
#include "tsili/metrics.hpp"
#include "tsili/normalizer.hpp"
#include "tsili/synth.hpp"
#include "tsili/tsili.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

json opt_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tsili::IoError("cannot write " + path.string());
    out << content;
    if (!out) throw tsili::IoError("error writing " + path.string());
}

// ---------------------------------------------------------------- detect --

struct DetectOptions {
    std::string manifest;
    std::string data_dir;
    std::string schema = "metrics-repo-2010";
    std::string resolve = "exact-path";
    std::string extension = ".java";
    std::string out;
    bool dump_index = false;
};

int cmd_detect(const DetectOptions& opt) {
    auto manifest = tsili::load_manifest(opt.manifest);
    fs::path data_dir = opt.data_dir.empty() ? fs::path(opt.manifest).parent_path()
                                             : fs::path(opt.data_dir);
    tsili::SchemaConfig schema = tsili::resolve_schema(opt.schema);
    tsili::NameResolution resolution{tsili::name_strategy_from_string(opt.resolve),
                                     opt.extension};

    tsili::WarningLog load_warnings;
    tsili::MultiVersionDataset datasets;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        fs::path csv = data_dir / (manifest[i].version + ".csv");
        tsili::VersionDataset ds = tsili::load_version_dataset(csv, schema, load_warnings);
        ds.version = manifest[i].version;
        ds.release_order = int(i);
        datasets.versions.push_back(std::move(ds));
    }

    tsili::TsiliResult result =
        tsili::run_tsili(datasets, manifest, resolution, tsili::LanguageProfile{});

    fs::path out_dir(opt.out);
    fs::create_directories(out_dir / "augmented");
    for (const tsili::VersionDataset& ds : result.augmented.versions) {
        tsili::write_augmented_dataset(ds, out_dir / "augmented" / (ds.version + ".csv"));
    }
    tsili::write_module_info_csv(result.table, out_dir / "module_info.csv");

    json report = json::parse(result.report.to_json());
    report["config"] = {{"manifest", opt.manifest},
                        {"dataDir", data_dir.string()},
                        {"schema", opt.schema},
                        {"resolve", opt.resolve},
                        {"sourceExtension", opt.extension},
                        {"out", opt.out}};
    for (const tsili::Warning& w : load_warnings.entries()) {
        report["warnings"].push_back({{"code", w.code}, {"detail", w.detail}});
    }
    write_file(out_dir / "run_report.json", report.dump(2) + "\n");

    if (opt.dump_index) {
        tsili::WarningLog index_warnings(tsili::LogLevel::Quiet);
        fs::create_directories(out_dir / "index");
        for (const tsili::ManifestEntry& entry : manifest) {
            tsili::SourceCodeDatabase db =
                tsili::build_index(entry.version, entry.root, resolution, index_warnings);
            db.export_csv(out_dir / "index" / (entry.version + ".csv"));
        }
    }

    std::cout << "detect: " << result.report.total_instances << " instances, "
              << result.report.total_yes << " YES, " << result.report.total_no << " NO, "
              << result.report.total_na << " NA\n";
    return 0;
}

// ----------------------------------------------------------------- stats --

struct StatsOptions {
    std::vector<std::string> inputs;
    std::string schema = "metrics-repo-2010";
    std::string dataset_name = "dataset";
    std::string out;
};

int cmd_stats(const StatsOptions& opt) {
    if (opt.inputs.empty()) throw tsili::ConfigError("stats: no augmented CSV inputs given");
    tsili::SchemaConfig schema = tsili::resolve_schema(opt.schema);
    tsili::WarningLog warnings;

    std::vector<tsili::ExistenceReport> reports;
    for (const std::string& input : opt.inputs) {
        tsili::VersionDataset ds = tsili::load_augmented_dataset(input, schema, warnings);
        reports.push_back(tsili::existence_ratios(ds));
    }
    tsili::SummaryReport summary = tsili::aggregate(opt.dataset_name, reports);

    std::string md = tsili::existence_markdown({summary});
    std::string js = tsili::existence_json({summary});
    if (!opt.out.empty()) {
        write_file(fs::path(opt.out) / "existence.md", md);
        write_file(fs::path(opt.out) / "existence.json", js + "\n");
    }
    std::cout << md;
    return 0;
}

// ------------------------------------------------------------------ eval --

struct EvalOptions {
    std::vector<std::string> nc_files, cc_files;
    std::vector<std::string> imp_nc_files, imp_cc_files;
    std::vector<std::string> cutoffs;
    double threshold = 0.5;
    int replicates = 1000;
    std::uint64_t seed = 0;
    std::string out;
};

std::map<tsili::Indicator, std::optional<double>> all_metrics(const tsili::PredictionSet& preds,
                                                              double threshold) {
    tsili::ConfusionMatrix cm = tsili::confusion(preds, threshold);
    tsili::RankMetrics rank = tsili::rank_eval(preds);
    return {{tsili::Indicator::F1, tsili::f1(cm)},
            {tsili::Indicator::AUC, tsili::auc(preds)},
            {tsili::Indicator::ER, tsili::er(cm)},
            {tsili::Indicator::RI, tsili::ri(cm)},
            {tsili::Indicator::AP, rank.ap},
            {tsili::Indicator::RR, rank.rr},
            {tsili::Indicator::Popt, rank.popt},
            {tsili::Indicator::ACC, rank.acc20}};
}

json ci_json(const tsili::BootstrapCi& ci) {
    return {{"sampleMean", ci.sample_mean}, {"replicateMean", ci.replicate_mean},
            {"replicateStddev", ci.replicate_stddev}, {"lower", ci.lower},
            {"upper", ci.upper},  {"replicates", ci.replicates},
            {"level", ci.level},  {"seed", ci.seed},
            {"significant", tsili::significant(ci)}};
}

int cmd_eval(const EvalOptions& opt) {
    if (opt.nc_files.empty() || opt.nc_files.size() != opt.cc_files.size()) {
        throw tsili::ConfigError("eval: --nc and --cc must be given the same number of times");
    }
    if (!opt.imp_nc_files.empty() && opt.imp_nc_files.size() != opt.imp_cc_files.size()) {
        throw tsili::ConfigError("eval: --imp-nc and --imp-cc must pair up");
    }
    std::vector<tsili::Cutoff> cutoffs;
    if (opt.cutoffs.empty()) {
        cutoffs = tsili::default_cutoffs();
    } else {
        for (const std::string& token : opt.cutoffs) cutoffs.push_back(tsili::parse_cutoff(token));
    }

    const std::vector<tsili::Indicator> indicators = {
        tsili::Indicator::F1, tsili::Indicator::AUC,  tsili::Indicator::ER,
        tsili::Indicator::RI, tsili::Indicator::AP,   tsili::Indicator::RR,
        tsili::Indicator::Popt, tsili::Indicator::ACC};

    json pairs = json::array();
    std::map<std::string, std::vector<double>> abs_diffs, abs_pgrs;
    std::map<std::string, std::vector<double>> dtps;
    std::vector<tsili::ShiftReport> shift_reports;

    for (std::size_t p = 0; p < opt.nc_files.size(); ++p) {
        tsili::PredictionSet nc = tsili::PredictionSet::load_csv(opt.nc_files[p]);
        tsili::PredictionSet cc = tsili::PredictionSet::load_csv(opt.cc_files[p]);

        std::set<std::string> nc_names, cc_names;
        for (const auto& rec : nc.records()) nc_names.insert(rec.name);
        for (const auto& rec : cc.records()) cc_names.insert(rec.name);
        if (nc_names != cc_names) {
            throw tsili::ConfigError("eval: prediction files disagree on the test-instance "
                                     "name set: " +
                                     opt.nc_files[p] + " vs " + opt.cc_files[p]);
        }

        auto nc_perf = all_metrics(nc, opt.threshold);
        auto cc_perf = all_metrics(cc, opt.threshold);

        std::set<std::string> defectives;
        for (const auto& rec : nc.records()) {
            if (rec.actual == 1) defectives.insert(rec.name);
        }

        json jp;
        jp["nc"] = opt.nc_files[p];
        jp["cc"] = opt.cc_files[p];
        jp["testSet"] = {{"instances", nc.size()}, {"defective", nc.defective_count()}};
        for (tsili::Indicator ind : indicators) {
            auto rnd = tsili::random_baseline(ind, (long long)nc.size(),
                                              (long long)nc.defective_count());
            auto d = tsili::diff(nc_perf[ind], cc_perf[ind]);
            auto g = tsili::pgr(nc_perf[ind], cc_perf[ind], rnd);
            jp["indicators"][tsili::to_string(ind)] = {{"nc", opt_json(nc_perf[ind])},
                                                       {"cc", opt_json(cc_perf[ind])},
                                                       {"random", opt_json(rnd)},
                                                       {"diff", opt_json(d)},
                                                       {"pgr", opt_json(g)}};
            if (d) abs_diffs[tsili::to_string(ind)].push_back(std::abs(*d));
            if (g) abs_pgrs[tsili::to_string(ind)].push_back(std::abs(*g));
        }

        for (const tsili::Cutoff& cutoff : cutoffs) {
            std::set<std::string> pad_nc = tsili::select_pad(nc, cutoff);
            std::set<std::string> pad_cc = tsili::select_pad(cc, cutoff);
            std::set<std::string> tp_nc, tp_cc;
            for (const std::string& name : pad_nc) {
                if (defectives.count(name)) tp_nc.insert(name);
            }
            for (const std::string& name : pad_cc) {
                if (defectives.count(name)) tp_cc.insert(name);
            }
            auto v = tsili::dtp(tp_nc, tp_cc);
            jp["dtp"][cutoff.label()] = opt_json(v);
            if (v) dtps[cutoff.label()].push_back(*v);
        }

        if (p < opt.imp_nc_files.size()) {
            auto imp_nc = tsili::load_importance_csv(opt.imp_nc_files[p]);
            auto imp_cc = tsili::load_importance_csv(opt.imp_cc_files[p]);
            tsili::ShiftReport report = tsili::shift_ranks(imp_cc, imp_nc);
            json shifts = json::array();
            for (const tsili::ShiftEntry& entry : report.entries) {
                shifts.push_back({{"k", entry.k},
                                  {"shift", entry.oom ? json(nullptr) : json(entry.shift)},
                                  {"oom", entry.oom}});
            }
            jp["shift"] = shifts;
            shift_reports.push_back(std::move(report));
        }
        pairs.push_back(std::move(jp));
    }

    json out;
    out["toolVersion"] = tsili::kToolVersion;
    out["config"] = {{"threshold", opt.threshold},
                     {"replicates", opt.replicates},
                     {"seed", opt.seed},
                     {"pairs", opt.nc_files.size()}};
    out["pairs"] = std::move(pairs);

    // Batch statistics: bootstrap CIs over |diff|, |pgr| and DTP when the
    // batch has at least two pairs. Sub-seeds are fixed per statistic slot
    // so reports are reproducible regardless of which cut-offs are chosen.
    if (opt.nc_files.size() >= 2) {
        json batch;
        std::uint64_t slot = 0;
        for (tsili::Indicator ind : indicators) {
            const std::string key = tsili::to_string(ind);
            if (abs_diffs.count(key) && !abs_diffs[key].empty()) {
                batch["absDiff"][key] = ci_json(tsili::bootstrap_ci(
                    abs_diffs[key], opt.replicates, 0.95, tsili::derive_seed(opt.seed, slot)));
            }
            ++slot;
        }
        for (tsili::Indicator ind : indicators) {
            const std::string key = tsili::to_string(ind);
            if (abs_pgrs.count(key) && !abs_pgrs[key].empty()) {
                batch["absPgr"][key] = ci_json(tsili::bootstrap_ci(
                    abs_pgrs[key], opt.replicates, 0.95, tsili::derive_seed(opt.seed, 100 + slot)));
            }
            ++slot;
        }
        std::uint64_t cutoff_slot = 200;
        for (const tsili::Cutoff& cutoff : cutoffs) {
            if (dtps.count(cutoff.label()) && !dtps[cutoff.label()].empty()) {
                batch["dtp"][cutoff.label()] =
                    ci_json(tsili::bootstrap_ci(dtps[cutoff.label()], opt.replicates, 0.95,
                                                tsili::derive_seed(opt.seed, cutoff_slot)));
            }
            ++cutoff_slot;
        }
        out["batch"] = std::move(batch);
    }

    if (!shift_reports.empty()) {
        tsili::ShiftDistribution dist = tsili::shift_distribution(shift_reports);
        json jd;
        for (const auto& [k, row] : dist.bins) {
            for (const auto& [bin, proportion] : row) {
                jd[std::to_string(k)][tsili::to_string(bin)] = proportion;
            }
        }
        out["shiftDistribution"] = std::move(jd);
        if (!opt.out.empty()) {
            dist.export_csv(fs::path(opt.out) / "shift_distribution.csv");
        }
    }

    std::string dumped = out.dump(2) + "\n";
    if (!opt.out.empty()) write_file(fs::path(opt.out) / "eval.json", dumped);
    std::cout << dumped;
    return 0;
}

// ----------------------------------------------------------------- synth --

struct SynthOptions {
    std::string kind;
    std::uint64_t seed = 0;
    std::string out;
    int modules = 10;
    int versions = 0;
    int filler_min = 200;
    int filler_max = 900;
    bool control = false;
};

int cmd_synth(const SynthOptions& opt) {
    tsili::SynthScenario scenario;
    scenario.kind = tsili::scenario_kind_from_string(opt.kind);
    scenario.seed = opt.seed;
    scenario.params.module_count = opt.modules;
    scenario.params.version_count = opt.versions;
    scenario.params.filler_code_min = opt.filler_min;
    scenario.params.filler_code_max = opt.filler_max;
    scenario.params.control = opt.control;

    tsili::FixtureLayout layout = tsili::generate(scenario, opt.out);
    std::cout << "synth: wrote " << layout.versions.size() << " versions under "
              << layout.out_dir.string() << " (manifest: " << layout.manifest.string() << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inconsistent-label detection and evaluation toolkit for "
                 "multi-version defect datasets"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tsili::kToolVersion);

    DetectOptions detect;
    CLI::App* cmd_d = app.add_subcommand(
        "detect", "Run three-stage inconsistent-label detection over a multi-version dataset");
    cmd_d->add_option("--manifest", detect.manifest, "Roots manifest (`version <id> <path>` lines)")
        ->required();
    cmd_d->add_option("--data-dir", detect.data_dir,
                      "Directory holding <version>.csv datasets (default: manifest directory)");
    cmd_d->add_option("--schema", detect.schema, "Schema preset name or schema file path");
    cmd_d->add_option("--resolve", detect.resolve,
                      "Name resolution: exact-path|java-package|unique-suffix");
    cmd_d->add_option("--extension", detect.extension, "Source file extension (default .java)");
    cmd_d->add_option("--out", detect.out, "Output directory")->required();
    cmd_d->add_flag("--dump-index", detect.dump_index, "Also export per-version name,codePath CSVs");

    StatsOptions stats;
    CLI::App* cmd_s = app.add_subcommand("stats", "Prevalence ratios over augmented datasets");
    cmd_s->add_option("inputs", stats.inputs, "Augmented CSVs in release order");
    cmd_s->add_option("--schema", stats.schema, "Schema preset name or schema file path");
    cmd_s->add_option("--dataset-name", stats.dataset_name, "Label for the summary row");
    cmd_s->add_option("--out", stats.out, "Output directory for existence.json/existence.md");

    EvalOptions eval;
    CLI::App* cmd_e = app.add_subcommand(
        "eval", "Performance, DTP and rank-shift comparison of NC vs CC predictions");
    cmd_e->add_option("--nc", eval.nc_files, "Predictions of the noisy-trained model (repeatable)")
        ->required();
    cmd_e->add_option("--cc", eval.cc_files, "Predictions of the clean-trained model (repeatable)")
        ->required();
    cmd_e->add_option("--imp-nc", eval.imp_nc_files, "NC feature-importance CSV (rank,feature)");
    cmd_e->add_option("--imp-cc", eval.imp_cc_files, "CC feature-importance CSV (rank,feature)");
    cmd_e->add_option("--cutoff", eval.cutoffs,
                      "PAD cutoff: binary|size20|top10|top20|top30 (repeatable; default all)");
    cmd_e->add_option("--threshold", eval.threshold, "Classification threshold (default 0.5)");
    cmd_e->add_option("--replicates", eval.replicates, "Bootstrap replicates (default 1000)");
    cmd_e->add_option("--seed", eval.seed, "Bootstrap seed")->required();
    cmd_e->add_option("--out", eval.out, "Output directory for eval.json");

    SynthOptions synth;
    CLI::App* cmd_y = app.add_subcommand("synth", "Generate a planted multi-version fixture");
    cmd_y->add_option("--kind", synth.kind,
                      "Scenario: no-bug-fp|intrinsic-fn|extrinsic|szz-comment|szz-rollback|"
                      "time-window|av-earliest|av-missing|av-error")
        ->required();
    cmd_y->add_option("--seed", synth.seed, "Generator seed")->required();
    cmd_y->add_option("--out", synth.out, "Fixture directory")->required();
    cmd_y->add_option("--modules", synth.modules, "Filler module count (default 10)");
    cmd_y->add_option("--versions", synth.versions, "Minimum version count");
    cmd_y->add_option("--filler-min", synth.filler_min, "Filler body size lower bound (bytes)");
    cmd_y->add_option("--filler-max", synth.filler_max, "Filler body size upper bound (bytes)");
    cmd_y->add_flag("--control", synth.control, "Plant no inconsistencies");

    std::string normalize_file;
    CLI::App* cmd_n = app.add_subcommand("normalize", "Print a file's canonical code form");
    cmd_n->add_option("file", normalize_file, "Source file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (cmd_d->parsed()) return cmd_detect(detect);
        if (cmd_s->parsed()) return cmd_stats(stats);
        if (cmd_e->parsed()) return cmd_eval(eval);
        if (cmd_y->parsed()) return cmd_synth(synth);
        if (cmd_n->parsed()) {
            std::ifstream in(normalize_file, std::ios::binary);
            if (!in) throw tsili::IoError("cannot open " + normalize_file);
            std::string raw((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
            tsili::WarningLog warnings;
            std::cout << tsili::normalize(raw, tsili::LanguageProfile{}, &warnings).text << "\n";
            return 0;
        }
    } catch (const tsili::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const tsili::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
