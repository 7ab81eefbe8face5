#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tsili {

// Minimal RFC-4180-style CSV: quoted fields may contain commas, quotes
// (doubled) and newlines. Cells are kept byte-for-byte; no type coercion.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Index of a header column, -1 if absent.
    int column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text);

void write_csv(const std::filesystem::path& path, const CsvTable& table);
std::string format_csv(const CsvTable& table);

// Quotes a cell only when needed, so plain cells round-trip byte-equal.
std::string csv_quote(const std::string& cell);

}  // namespace tsili
