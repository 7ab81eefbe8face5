#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tsili/common.hpp"

namespace tsili {

// How dataset instance names map onto files under a version's source root.
//   exact-path:    key is the relative path with separators normalized to "/"
//   java-package:  key is the relative path with "/" -> "." and the source
//                  extension stripped (org/apache/X.java -> org.apache.X)
//   unique-suffix: key is the bare filename; ambiguous suffixes resolve to
//                  nothing (with a warning)
enum class NameStrategy { ExactPath, JavaPackage, UniqueSuffix };

NameStrategy name_strategy_from_string(const std::string& s);
const char* to_string(NameStrategy s);

struct NameResolution {
    NameStrategy strategy = NameStrategy::ExactPath;
    std::string source_extension = ".java";
};

// Per-version map from canonical module name to source file. Entries are
// sorted by name; lookups are binary searches.
class SourceCodeDatabase {
  public:
    struct Entry {
        std::string name;
        std::vector<std::string> paths;  // >1 only under unique-suffix collisions
    };

    SourceCodeDatabase() = default;
    SourceCodeDatabase(std::string version, std::filesystem::path root, std::vector<Entry> sorted);

    const std::string& version() const { return version_; }
    const std::filesystem::path& root() const { return root_; }
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    /// Path (relative to root) for `name`, or nullopt when absent or
    /// ambiguous. Ambiguity warns once per lookup.
    std::optional<std::string> lookup(const std::string& name, WarningLog* warnings = nullptr) const;

    void export_csv(const std::filesystem::path& path) const;  // name,codePath

  private:
    std::string version_;
    std::filesystem::path root_;
    std::vector<Entry> entries_;
};

/// Recursively enumerates regular files under `root` matching the resolution
/// extension (symlinks not followed) and builds the sorted database.
/// Unreadable subtrees are skipped with a warning; an unreadable root throws
/// IoError.
SourceCodeDatabase build_index(const std::string& version, const std::filesystem::path& root,
                               const NameResolution& resolution, WarningLog& warnings);

// Roots manifest: lines `version <id> <path>`, blank lines and #-comments
// ignored. Relative paths are resolved against the manifest's directory.
struct ManifestEntry {
    std::string version;
    std::filesystem::path root;
};

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

}  // namespace tsili
