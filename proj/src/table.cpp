#include "haplink/table.hpp"

#include <charconv>

namespace haplink {

std::string format_value(double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 9);
    return std::string(buf, end);
}

static const char* error_marker = "error";

std::string to_csv(const SeriesTable& table) {
    std::string out;
    for (size_t c = 0; c < table.columns.size(); ++c) {
        if (c)
            out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c)
                out += ',';
            out += row[c].ok ? format_value(row[c].value) : error_marker;
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const SeriesTable& table) {
    std::string out = "{\n  \"columns\": [";
    for (size_t c = 0; c < table.columns.size(); ++c) {
        if (c)
            out += ", ";
        out += '"';
        out += table.columns[c];
        out += '"';
    }
    out += "],\n  \"rows\": [\n";
    for (size_t r = 0; r < table.rows.size(); ++r) {
        out += "    [";
        const auto& row = table.rows[r];
        for (size_t c = 0; c < row.size(); ++c) {
            if (c)
                out += ", ";
            if (row[c].ok)
                out += format_value(row[c].value);
            else {
                out += '"';
                out += error_marker;
                out += '"';
            }
        }
        out += r + 1 < table.rows.size() ? "],\n" : "]\n";
    }
    out += "  ]\n}\n";
    return out;
}

} // namespace haplink
