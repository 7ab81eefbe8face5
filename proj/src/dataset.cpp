#include "tsili/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace tsili {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

// Label cell -> {0,1}. Numbers > 0 count as buggy (defect counts denote
// defects); TRUE/FALSE cover the boolean-encoded families.
int parse_label(const std::string& cell, std::size_t row_index) {
    std::string t = trim(cell);
    std::string lt = lower(t);
    if (lt == "true") return 1;
    if (lt == "false") return 0;
    try {
        std::size_t pos = 0;
        double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument(t);
        if (v < 0) {
            throw SchemaError("row " + std::to_string(row_index) +
                              ": negative label value \"" + t + "\"");
        }
        return v > 0 ? 1 : 0;
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception&) {
        throw SchemaError("row " + std::to_string(row_index) + ": non-numeric label \"" + cell +
                          "\"");
    }
}

std::optional<long long> parse_sloc(const std::string& cell) {
    std::string t = trim(cell);
    if (t.empty()) return std::nullopt;
    long long v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || v < 0) return std::nullopt;
    return v;
}

int require_column(const CsvTable& table, const std::string& name,
                   const std::filesystem::path& path) {
    int idx = table.column(name);
    if (idx < 0) {
        throw SchemaError("missing column \"" + name + "\" in " + path.string());
    }
    return idx;
}

VersionDataset load_impl(const std::filesystem::path& path, const SchemaConfig& schema,
                         WarningLog& warnings, bool augmented) {
    CsvTable table = read_csv(path);
    int name_idx = require_column(table, schema.name_column, path);
    int label_idx = require_column(table, schema.label_column, path);
    int sloc_idx = -1;
    if (schema.sloc_column) sloc_idx = table.column(*schema.sloc_column);
    int flag_idx = -1;
    if (augmented) flag_idx = require_column(table, "isInconsistentLabel", path);

    VersionDataset ds;
    ds.version = path.stem().string();
    ds.header = table.header;

    std::unordered_set<std::string> seen;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        auto cell = [&](int idx) -> const std::string& {
            static const std::string kEmpty;
            return (idx >= 0 && std::size_t(idx) < row.size()) ? row[idx] : kEmpty;
        };
        Instance inst;
        inst.name = cell(name_idx);
        if (!seen.insert(inst.name).second) {
            warnings.emit("DUPLICATE_NAME",
                          path.filename().string() + " row " + std::to_string(r + 2) + ": \"" +
                              inst.name + "\" (first occurrence kept)");
            continue;
        }
        inst.label = parse_label(cell(label_idx), r + 2);
        if (sloc_idx >= 0) inst.sloc = parse_sloc(cell(sloc_idx));
        if (augmented) inst.il_flag = il_flag_from_string(trim(cell(flag_idx)));
        ds.rows.push_back(row);
        ds.instances.push_back(std::move(inst));
    }
    return ds;
}

}  // namespace

SchemaConfig schema_preset(const std::string& name) {
    // Header conventions per dataset family; override with a schema file if
    // a local copy differs.
    if (name == "metrics-repo-2010") return {"name", "bug", "loc", {}};
    if (name == "eclipse-2007") return {"filename", "post", "TLOC", {}};
    if (name == "jira-ha-2019") return {"File", "HeuBug", "CountLineCode", {}};
    if (name == "jira-ra-2019") return {"File", "RealBug", "CountLineCode", {}};
    if (name == "ma-szz-2020") return {"name", "bug", "loc", {}};
    throw ConfigError("unknown schema preset: \"" + name + "\"");
}

SchemaConfig load_schema_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open schema file: " + path.string());
    SchemaConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected key = value");
        }
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key == "name_column") {
            cfg.name_column = value;
        } else if (key == "label_column") {
            cfg.label_column = value;
        } else if (key == "sloc_column") {
            cfg.sloc_column = value;
        } else if (key == "exclude") {
            std::istringstream parts(value);
            std::string col;
            while (std::getline(parts, col, ',')) {
                col = trim(col);
                if (!col.empty()) cfg.excluded_features.push_back(col);
            }
        } else {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": unknown key \"" + key + "\"");
        }
    }
    if (cfg.name_column.empty() || cfg.label_column.empty()) {
        throw ConfigError(path.string() + ": schema needs name_column and label_column");
    }
    return cfg;
}

SchemaConfig resolve_schema(const std::string& preset_or_path) {
    try {
        return schema_preset(preset_or_path);
    } catch (const ConfigError&) {
        if (std::filesystem::exists(preset_or_path)) return load_schema_file(preset_or_path);
        throw ConfigError("\"" + preset_or_path + "\" is neither a schema preset nor a file");
    }
}

std::vector<std::string> VersionDataset::feature_columns(const SchemaConfig& schema) const {
    std::vector<std::string> out;
    for (const auto& col : header) {
        if (col == schema.name_column || col == schema.label_column) continue;
        if (schema.sloc_column && col == *schema.sloc_column) continue;
        if (col == "isInconsistentLabel") continue;
        if (std::find(schema.excluded_features.begin(), schema.excluded_features.end(), col) !=
            schema.excluded_features.end()) {
            continue;
        }
        out.push_back(col);
    }
    return out;
}

VersionDataset load_version_dataset(const std::filesystem::path& path, const SchemaConfig& schema,
                                    WarningLog& warnings) {
    return load_impl(path, schema, warnings, /*augmented=*/false);
}

VersionDataset load_augmented_dataset(const std::filesystem::path& path,
                                      const SchemaConfig& schema, WarningLog& warnings) {
    return load_impl(path, schema, warnings, /*augmented=*/true);
}

VersionDataset clean(const VersionDataset& dataset) {
    VersionDataset out;
    out.project = dataset.project;
    out.version = dataset.version;
    out.release_order = dataset.release_order;
    out.header = dataset.header;
    for (std::size_t i = 0; i < dataset.instances.size(); ++i) {
        const Instance& inst = dataset.instances[i];
        if (inst.il_flag == IlFlag::Unset) {
            throw StateError("clean(): instance \"" + inst.name +
                             "\" has no inconsistent-label flag (augmentation not run)");
        }
        if (inst.il_flag == IlFlag::Yes) continue;
        out.rows.push_back(dataset.rows[i]);
        out.instances.push_back(inst);
    }
    return out;
}

void write_augmented_dataset(const VersionDataset& dataset, const std::filesystem::path& path) {
    CsvTable table;
    table.header = dataset.header;
    table.header.push_back("isInconsistentLabel");
    table.rows.reserve(dataset.rows.size());
    for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
        const Instance& inst = dataset.instances[i];
        if (inst.il_flag == IlFlag::Unset) {
            throw StateError("write_augmented_dataset(): instance \"" + inst.name +
                             "\" has no inconsistent-label flag");
        }
        auto row = dataset.rows[i];
        row.push_back(to_string(inst.il_flag));
        table.rows.push_back(std::move(row));
    }
    write_csv(path, table);
}

}  // namespace tsili
