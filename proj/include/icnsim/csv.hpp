#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "icnsim/types.hpp"

namespace icnsim {

/// Column-named string table backing the report CSVs. Values never contain
/// commas or newlines (numbers and identifiers only), so rows are written
/// verbatim with LF endings and a mandatory header row.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t column_index(const std::string& name) const; // throws ConfigError
    bool has_column(const std::string& name) const;
    void append_row(std::vector<std::string> row);
    /// New table holding the named columns in the given order.
    Table select(const std::vector<std::string>& names) const;

    std::string to_csv() const;
    static Table from_csv(std::istream& in);
    static Table from_csv_text(const std::string& text);
};

std::string format_double(double v);

} // namespace icnsim
