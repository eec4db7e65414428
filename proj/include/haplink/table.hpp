#pragma once

#include <string>
#include <vector>

namespace haplink {

/// One table cell: a value, or an error marker for a failed grid point.
struct Cell {
    double value{};
    bool ok{true};

    static Cell error() { return Cell{0.0, false}; }
    bool operator==(const Cell&) const = default;
};

/// Rectangular sweep output: the swept variable first, one column per series.
struct SeriesTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Locale-independent formatting with 9 significant digits ('.' decimal
/// separator). Shared by the CSV and JSON emitters so both are bit-identical.
std::string format_value(double v);

/// CSV: header row, LF line endings, failed cells as the token "error".
std::string to_csv(const SeriesTable& table);

/// JSON mirror of the CSV with identical numeric formatting.
std::string to_json(const SeriesTable& table);

} // namespace haplink
