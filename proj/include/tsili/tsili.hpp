#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tsili/code_index.hpp"
#include "tsili/common.hpp"
#include "tsili/dataset.hpp"
#include "tsili/normalizer.hpp"

namespace tsili {

// One matched instance: the five-tuple plus bookkeeping. `flag` is NO after
// stage 1; stage 2 may raise it to YES, or to NA when the file is unreadable
// or normalizes to empty (no comparable code).
struct ModuleInfoRecord {
    std::string name;
    std::string version;
    std::string code_path;  // resolved path of the module's source file
    int defect_label = 0;
    IlFlag flag = IlFlag::No;
    int release_order = 0;
};

struct ModuleInfoTable {
    enum class Order { ByName, ByVersion };
    std::vector<ModuleInfoRecord> records;
    Order order = Order::ByName;
};

/// Stage 1: one record per instance whose name resolves in its version's
/// database, flag NO; sorted by (name, releaseOrder). Version ids of
/// datasets and databases must match pairwise (ConfigError otherwise).
ModuleInfoTable stage1_build_table(const MultiVersionDataset& datasets,
                                   const std::vector<SourceCodeDatabase>& dbs,
                                   WarningLog& warnings);

/// Stage 2: group records by name; groups with a single distinct label are
/// skipped without touching the disk. Otherwise each member's file is read
/// and normalized, the group is partitioned into equal-code classes
/// (digest first, full text confirms), and every class holding two or more
/// records with differing labels is flagged YES. Records with unreadable
/// files or empty normalized code become NA.
void stage2_mark_inconsistent(ModuleInfoTable& table, const LanguageProfile& profile,
                              WarningLog& warnings);

/// Stage 3: re-sorts the table by version and copies each record's flag onto
/// its instance; instances without a record become NA.
MultiVersionDataset stage3_augment(const MultiVersionDataset& datasets, ModuleInfoTable& table);

struct VersionCoverage {
    std::string version;
    std::size_t instances = 0;
    std::size_t matched = 0;  // instances with a moduleInfo record
    std::size_t yes = 0, no = 0, na = 0;
};

struct RunReport {
    std::vector<VersionCoverage> versions;
    std::size_t total_instances = 0;
    std::size_t total_yes = 0, total_no = 0, total_na = 0;
    double stage1_ms = 0, stage2_ms = 0, stage3_ms = 0;
    std::vector<Warning> warnings;

    std::string to_json() const;
};

struct TsiliResult {
    MultiVersionDataset augmented;
    ModuleInfoTable table;
    RunReport report;
};

/// End-to-end detection: builds one index per manifest entry, runs the three
/// stages, and reports coverage, flag counts, warnings and per-stage times.
TsiliResult run_tsili(const MultiVersionDataset& datasets,
                      const std::vector<ManifestEntry>& manifest, const NameResolution& resolution,
                      const LanguageProfile& profile);

/// moduleInfo audit export with the five-tuple columns:
/// name,version,codePath,defectLabel,isInconsistentLabel.
void write_module_info_csv(const ModuleInfoTable& table, const std::filesystem::path& path);

}  // namespace tsili
