#include "tsili/code_index.hpp"

#include <algorithm>
#include <fstream>

#include "tsili/csv.hpp"

namespace tsili {

namespace fs = std::filesystem;

NameStrategy name_strategy_from_string(const std::string& s) {
    if (s == "exact-path") return NameStrategy::ExactPath;
    if (s == "java-package") return NameStrategy::JavaPackage;
    if (s == "unique-suffix") return NameStrategy::UniqueSuffix;
    throw ConfigError("unknown name-resolution strategy: \"" + s + "\"");
}

const char* to_string(NameStrategy s) {
    switch (s) {
        case NameStrategy::ExactPath: return "exact-path";
        case NameStrategy::JavaPackage: return "java-package";
        case NameStrategy::UniqueSuffix: return "unique-suffix";
    }
    return "exact-path";
}

SourceCodeDatabase::SourceCodeDatabase(std::string version, fs::path root,
                                       std::vector<Entry> sorted)
    : version_(std::move(version)), root_(std::move(root)), entries_(std::move(sorted)) {}

std::optional<std::string> SourceCodeDatabase::lookup(const std::string& name,
                                                      WarningLog* warnings) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), name,
        [](const Entry& e, const std::string& key) { return e.name < key; });
    if (it == entries_.end() || it->name != name) return std::nullopt;
    if (it->paths.size() > 1) {
        if (warnings != nullptr) {
            warnings->emit("AMBIGUOUS_NAME", "version " + version_ + ": \"" + name + "\" matches " +
                                                 std::to_string(it->paths.size()) + " files");
        }
        return std::nullopt;
    }
    return it->paths.front();
}

void SourceCodeDatabase::export_csv(const fs::path& path) const {
    CsvTable table;
    table.header = {"name", "codePath"};
    for (const auto& entry : entries_) {
        for (const auto& p : entry.paths) table.rows.push_back({entry.name, p});
    }
    write_csv(path, table);
}

namespace {

std::string generic_relative(const fs::path& file, const fs::path& root) {
    return file.lexically_relative(root).generic_string();
}

std::string canonical_key(const std::string& rel, const NameResolution& resolution) {
    switch (resolution.strategy) {
        case NameStrategy::ExactPath:
            return rel;
        case NameStrategy::JavaPackage: {
            std::string key = rel;
            if (key.size() >= resolution.source_extension.size() &&
                key.compare(key.size() - resolution.source_extension.size(),
                            resolution.source_extension.size(),
                            resolution.source_extension) == 0) {
                key.resize(key.size() - resolution.source_extension.size());
            }
            std::replace(key.begin(), key.end(), '/', '.');
            return key;
        }
        case NameStrategy::UniqueSuffix: {
            std::size_t slash = rel.find_last_of('/');
            return slash == std::string::npos ? rel : rel.substr(slash + 1);
        }
    }
    return rel;
}

}  // namespace

SourceCodeDatabase build_index(const std::string& version, const fs::path& root,
                               const NameResolution& resolution, WarningLog& warnings) {
    std::error_code ec;
    if (!fs::is_directory(root, ec) || ec) {
        throw IoError("source root is not a readable directory: " + root.string());
    }

    std::vector<std::pair<std::string, std::string>> keyed;  // (name, relative path)
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec) throw IoError("cannot enumerate source root: " + root.string());
    fs::recursive_directory_iterator end;
    while (it != end) {
        const fs::directory_entry& entry = *it;
        if (entry.is_symlink(ec)) {
            it.disable_recursion_pending();  // links are not followed
            it.increment(ec);
            continue;
        }
        if (entry.is_regular_file(ec) && !ec) {
            std::string rel = generic_relative(entry.path(), root);
            if (rel.size() >= resolution.source_extension.size() &&
                rel.compare(rel.size() - resolution.source_extension.size(),
                            resolution.source_extension.size(), resolution.source_extension) == 0) {
                keyed.emplace_back(canonical_key(rel, resolution), rel);
            }
        }
        it.increment(ec);
        if (ec) {
            warnings.emit("SCAN_ERROR", "version " + version + ": " + ec.message());
            break;
        }
    }

    std::sort(keyed.begin(), keyed.end());
    std::vector<SourceCodeDatabase::Entry> entries;
    for (auto& [name, path] : keyed) {
        if (!entries.empty() && entries.back().name == name) {
            entries.back().paths.push_back(std::move(path));
        } else {
            entries.push_back({name, {std::move(path)}});
        }
    }
    for (const auto& entry : entries) {
        if (entry.paths.size() > 1 && resolution.strategy != NameStrategy::UniqueSuffix) {
            // exact-path and java-package keys are injective over one tree
            warnings.emit("DUPLICATE_KEY",
                          "version " + version + ": \"" + entry.name + "\" maps to " +
                              std::to_string(entry.paths.size()) + " files");
        }
    }
    return SourceCodeDatabase(version, root, std::move(entries));
}

std::vector<ManifestEntry> load_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path.string());
    fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");

    std::vector<ManifestEntry> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;

        std::size_t kw_end = line.find_first_of(" \t", start);
        if (kw_end == std::string::npos || line.substr(start, kw_end - start) != "version") {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected `version <id> <path>`");
        }
        std::size_t id_start = line.find_first_not_of(" \t", kw_end);
        std::size_t id_end =
            id_start == std::string::npos ? std::string::npos : line.find_first_of(" \t", id_start);
        std::size_t path_start =
            id_end == std::string::npos ? std::string::npos : line.find_first_not_of(" \t", id_end);
        if (path_start == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected `version <id> <path>`");
        }
        ManifestEntry entry;
        entry.version = line.substr(id_start, id_end - id_start);
        fs::path p(line.substr(path_start));
        entry.root = p.is_absolute() ? p : base / p;
        entries.push_back(std::move(entry));
    }
    if (entries.empty()) {
        throw ConfigError(path.string() + ": manifest declares no versions");
    }
    return entries;
}

}  // namespace tsili
