#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace ctap::io {

/// Numeric table with a header row. Cells are doubles; "nan" round-trips.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const;
    std::vector<double> column_values(const std::string& name) const;
};

/// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double value);

void write_csv(std::ostream& out, const Table& table);
void write_csv(const std::string& path, const Table& table);

/// Throws std::runtime_error on ragged rows or unparsable cells.
Table read_csv(std::istream& in);
Table read_csv(const std::string& path);

}  // namespace ctap::io
