#include "tsili/csv.hpp"

#include <fstream>
#include <sstream>

#include "tsili/common.hpp"

namespace tsili {

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

namespace {

std::vector<std::vector<std::string>> parse_records(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string cell;
    bool quoted = false;
    bool any = false;  // current record has content (guards trailing newline)

    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < n && text[i + 1] == '"') {
                    cell += '"';
                    i += 2;
                } else {
                    quoted = false;
                    ++i;
                }
            } else {
                cell += c;
                ++i;
            }
            continue;
        }
        switch (c) {
            case '"':
                quoted = true;
                any = true;
                ++i;
                break;
            case ',':
                record.push_back(std::move(cell));
                cell.clear();
                any = true;
                ++i;
                break;
            case '\r':
                ++i;  // swallowed; \r\n and bare \r both end the line below
                if (i < n && text[i] == '\n') break;
                [[fallthrough]];
            case '\n':
                if (c == '\n') ++i;
                record.push_back(std::move(cell));
                cell.clear();
                records.push_back(std::move(record));
                record.clear();
                any = false;
                break;
            default:
                cell += c;
                any = true;
                ++i;
                break;
        }
    }
    if (any || !cell.empty() || !record.empty()) {
        record.push_back(std::move(cell));
        records.push_back(std::move(record));
    }
    return records;
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    auto records = parse_records(text);
    if (records.empty()) return table;
    table.header = std::move(records.front());
    table.rows.assign(std::make_move_iterator(records.begin() + 1),
                      std::make_move_iterator(records.end()));
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open CSV file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

std::string csv_quote(const std::string& cell) {
    bool needs = cell.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_csv(const CsvTable& table) {
    std::string out;
    auto emit_row = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_quote(row[i]);
        }
        out += '\n';
    };
    emit_row(table.header);
    for (const auto& row : table.rows) emit_row(row);
    return out;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write CSV file: " + path.string());
    out << format_csv(table);
    if (!out) throw IoError("error while writing CSV file: " + path.string());
}

}  // namespace tsili
