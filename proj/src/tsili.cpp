#include "tsili/tsili.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "tsili/csv.hpp"

namespace tsili {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool read_file(const std::filesystem::path& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) return false;
    out = buf.str();
    return true;
}

void sort_by_name(ModuleInfoTable& table) {
    std::sort(table.records.begin(), table.records.end(),
              [](const ModuleInfoRecord& a, const ModuleInfoRecord& b) {
                  if (a.name != b.name) return a.name < b.name;
                  return a.release_order < b.release_order;
              });
    table.order = ModuleInfoTable::Order::ByName;
}

void sort_by_version(ModuleInfoTable& table) {
    std::sort(table.records.begin(), table.records.end(),
              [](const ModuleInfoRecord& a, const ModuleInfoRecord& b) {
                  if (a.release_order != b.release_order) return a.release_order < b.release_order;
                  return a.name < b.name;
              });
    table.order = ModuleInfoTable::Order::ByVersion;
}

}  // namespace

ModuleInfoTable stage1_build_table(const MultiVersionDataset& datasets,
                                   const std::vector<SourceCodeDatabase>& dbs,
                                   WarningLog& warnings) {
    if (datasets.versions.size() != dbs.size()) {
        throw ConfigError("stage 1: " + std::to_string(datasets.versions.size()) +
                          " datasets but " + std::to_string(dbs.size()) + " source databases");
    }
    for (std::size_t i = 0; i < dbs.size(); ++i) {
        if (datasets.versions[i].version != dbs[i].version()) {
            throw ConfigError("stage 1: version id mismatch at position " + std::to_string(i) +
                              ": dataset \"" + datasets.versions[i].version +
                              "\" vs database \"" + dbs[i].version() + "\"");
        }
    }

    ModuleInfoTable table;
    for (std::size_t i = 0; i < dbs.size(); ++i) {
        const VersionDataset& ds = datasets.versions[i];
        const SourceCodeDatabase& db = dbs[i];
        for (const Instance& inst : ds.instances) {
            auto rel = db.lookup(inst.name, &warnings);
            if (!rel) continue;  // unmatched instances get NA at stage 3
            ModuleInfoRecord rec;
            rec.name = inst.name;
            rec.version = ds.version;
            rec.code_path = (db.root() / *rel).generic_string();
            rec.defect_label = inst.label;
            rec.flag = IlFlag::No;
            rec.release_order = ds.release_order;
            table.records.push_back(std::move(rec));
        }
    }
    sort_by_name(table);
    return table;
}

void stage2_mark_inconsistent(ModuleInfoTable& table, const LanguageProfile& profile,
                              WarningLog& warnings) {
    if (table.order != ModuleInfoTable::Order::ByName) sort_by_name(table);
    auto& records = table.records;

    std::size_t group_begin = 0;
    while (group_begin < records.size()) {
        std::size_t group_end = group_begin + 1;
        while (group_end < records.size() &&
               records[group_end].name == records[group_begin].name) {
            ++group_end;
        }

        bool has_buggy = false, has_clean = false;
        for (std::size_t i = group_begin; i < group_end; ++i) {
            (records[i].defect_label ? has_buggy : has_clean) = true;
        }
        // |labelSet| == 1: nothing to compare, files stay unread.
        if (!(has_buggy && has_clean)) {
            group_begin = group_end;
            continue;
        }

        // Partition members into equal-code classes: digest buckets with a
        // full-text confirmation on digest hits.
        struct CodeClass {
            std::string text;
            std::vector<std::size_t> members;
        };
        std::vector<CodeClass> classes;
        std::unordered_map<std::string, std::vector<std::size_t>> by_digest;  // hex -> class idx

        for (std::size_t i = group_begin; i < group_end; ++i) {
            ModuleInfoRecord& rec = records[i];
            std::string raw;
            if (!read_file(rec.code_path, raw)) {
                rec.flag = IlFlag::Na;
                warnings.emit("UNREADABLE_SOURCE", rec.code_path);
                continue;
            }
            NormalizedCode code = normalize(raw, profile, &warnings);
            if (code.empty) {
                rec.flag = IlFlag::Na;  // no comparable code (e.g. comment-only file)
                continue;
            }
            auto& bucket = by_digest[code.digest.hex()];
            bool joined = false;
            for (std::size_t cls : bucket) {
                if (classes[cls].text == code.text) {
                    classes[cls].members.push_back(i);
                    joined = true;
                    break;
                }
            }
            if (!joined) {
                bucket.push_back(classes.size());
                classes.push_back({std::move(code.text), {i}});
            }
        }

        for (const CodeClass& cls : classes) {
            if (cls.members.size() < 2) continue;
            bool buggy = false, cln = false;
            for (std::size_t i : cls.members) {
                (records[i].defect_label ? buggy : cln) = true;
            }
            if (buggy && cln) {
                for (std::size_t i : cls.members) records[i].flag = IlFlag::Yes;
            }
        }
        group_begin = group_end;
    }
}

MultiVersionDataset stage3_augment(const MultiVersionDataset& datasets, ModuleInfoTable& table) {
    sort_by_version(table);
    const auto& records = table.records;

    MultiVersionDataset out = datasets;
    std::size_t cursor = 0;
    for (VersionDataset& ds : out.versions) {
        // Records for this version form one contiguous, name-sorted run.
        std::size_t begin = cursor;
        while (cursor < records.size() && records[cursor].release_order == ds.release_order &&
               records[cursor].version == ds.version) {
            ++cursor;
        }
        std::size_t end = cursor;
        for (Instance& inst : ds.instances) {
            auto it = std::lower_bound(records.begin() + begin, records.begin() + end, inst.name,
                                       [](const ModuleInfoRecord& rec, const std::string& key) {
                                           return rec.name < key;
                                       });
            if (it != records.begin() + end && it->name == inst.name) {
                inst.il_flag = it->flag;
            } else {
                inst.il_flag = IlFlag::Na;  // source not found
            }
        }
    }
    return out;
}

TsiliResult run_tsili(const MultiVersionDataset& datasets,
                      const std::vector<ManifestEntry>& manifest, const NameResolution& resolution,
                      const LanguageProfile& profile) {
    WarningLog warnings;
    TsiliResult result;

    auto t0 = Clock::now();
    std::vector<SourceCodeDatabase> dbs;
    dbs.reserve(manifest.size());
    for (const ManifestEntry& entry : manifest) {
        dbs.push_back(build_index(entry.version, entry.root, resolution, warnings));
    }
    result.table = stage1_build_table(datasets, dbs, warnings);
    result.report.stage1_ms = ms_since(t0);

    auto t1 = Clock::now();
    stage2_mark_inconsistent(result.table, profile, warnings);
    result.report.stage2_ms = ms_since(t1);

    auto t2 = Clock::now();
    result.augmented = stage3_augment(datasets, result.table);
    result.report.stage3_ms = ms_since(t2);

    for (const VersionDataset& ds : result.augmented.versions) {
        VersionCoverage cov;
        cov.version = ds.version;
        cov.instances = ds.instances.size();
        for (const Instance& inst : ds.instances) {
            switch (inst.il_flag) {
                case IlFlag::Yes: ++cov.yes; break;
                case IlFlag::No: ++cov.no; break;
                default: ++cov.na; break;
            }
        }
        // Matched = has a moduleInfo record. NA can also come from stage-2
        // tagging, so count records directly.
        for (const ModuleInfoRecord& rec : result.table.records) {
            if (rec.version == ds.version) ++cov.matched;
        }
        result.report.total_instances += cov.instances;
        result.report.total_yes += cov.yes;
        result.report.total_no += cov.no;
        result.report.total_na += cov.na;
        result.report.versions.push_back(std::move(cov));
    }
    result.report.warnings = warnings.entries();
    return result;
}

std::string RunReport::to_json() const {
    nlohmann::json j;
    j["toolVersion"] = kToolVersion;
    j["totals"] = {{"instances", total_instances},
                   {"yes", total_yes},
                   {"no", total_no},
                   {"na", total_na}};
    j["stageMillis"] = {{"stage1", stage1_ms}, {"stage2", stage2_ms}, {"stage3", stage3_ms}};
    j["versions"] = nlohmann::json::array();
    for (const VersionCoverage& cov : versions) {
        double coverage =
            cov.instances ? double(cov.matched) / double(cov.instances) : 0.0;
        j["versions"].push_back({{"version", cov.version},
                                 {"instances", cov.instances},
                                 {"matched", cov.matched},
                                 {"coverage", coverage},
                                 {"yes", cov.yes},
                                 {"no", cov.no},
                                 {"na", cov.na}});
    }
    j["warnings"] = nlohmann::json::array();
    for (const Warning& w : warnings) {
        j["warnings"].push_back({{"code", w.code}, {"detail", w.detail}});
    }
    return j.dump(2);
}

void write_module_info_csv(const ModuleInfoTable& table, const std::filesystem::path& path) {
    CsvTable csv;
    csv.header = {"name", "version", "codePath", "defectLabel", "isInconsistentLabel"};
    for (const ModuleInfoRecord& rec : table.records) {
        csv.rows.push_back({rec.name, rec.version, rec.code_path,
                            std::to_string(rec.defect_label), to_string(rec.flag)});
    }
    write_csv(path, csv);
}

}  // namespace tsili
