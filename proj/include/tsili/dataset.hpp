#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tsili/common.hpp"
#include "tsili/csv.hpp"

namespace tsili {

// Column layout of one dataset family. Feature columns are every header
// column that is not the name/label/sloc column and not excluded.
struct SchemaConfig {
    std::string name_column;
    std::string label_column;
    std::optional<std::string> sloc_column;
    std::vector<std::string> excluded_features;
};

// Built-in presets: metrics-repo-2010, eclipse-2007, jira-ha-2019,
// jira-ra-2019, ma-szz-2020. Throws ConfigError for unknown names.
SchemaConfig schema_preset(const std::string& name);

// Schema file format: one `key = value` per line (#-comments allowed); keys
// name_column, label_column, sloc_column, exclude (comma-separated).
SchemaConfig load_schema_file(const std::filesystem::path& path);

// Accepts a preset name or a path to a schema file.
SchemaConfig resolve_schema(const std::string& preset_or_path);

struct Instance {
    std::string name;
    int label = 0;  // 0 = clean, 1 = buggy
    std::optional<long long> sloc;
    IlFlag il_flag = IlFlag::Unset;
};

// One version's dataset. Raw header/rows are retained so augmented output
// preserves the original columns verbatim; rows[i] corresponds to
// instances[i].
struct VersionDataset {
    std::string project;
    std::string version;
    int release_order = 0;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<Instance> instances;

    std::vector<std::string> feature_columns(const SchemaConfig& schema) const;
};

struct MultiVersionDataset {
    std::string project;
    std::vector<VersionDataset> versions;  // ordered by release_order
};

/// Loads one version's CSV. Numeric label values > 0 map to 1 (defect counts
/// denote defects); TRUE/FALSE are accepted for label columns that encode
/// booleans. Duplicate names keep the first row and emit a warning; every
/// ilFlag starts Unset.
VersionDataset load_version_dataset(const std::filesystem::path& path, const SchemaConfig& schema,
                                    WarningLog& warnings);

/// Same, but also reads the `isInconsistentLabel` column into il_flag.
/// Throws SchemaError when the column is absent.
VersionDataset load_augmented_dataset(const std::filesystem::path& path,
                                      const SchemaConfig& schema, WarningLog& warnings);

/// S' = clean(S): every instance with ilFlag != YES, original order. Throws
/// StateError if any flag is still Unset.
VersionDataset clean(const VersionDataset& dataset);

/// Writes the original columns verbatim plus a trailing
/// `isInconsistentLabel` column holding NO/YES/NA. All flags must be set.
void write_augmented_dataset(const VersionDataset& dataset, const std::filesystem::path& path);

}  // namespace tsili
