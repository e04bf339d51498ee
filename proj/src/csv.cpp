#include "icnsim/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace icnsim {

std::size_t Table::column_index(const std::string& name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end())
        throw ConfigError("table has no column '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

bool Table::has_column(const std::string& name) const {
    return std::find(columns.begin(), columns.end(), name) != columns.end();
}

void Table::append_row(std::vector<std::string> row) {
    if (row.size() != columns.size())
        throw ConfigError("row width " + std::to_string(row.size()) + " does not match " +
                          std::to_string(columns.size()) + " columns");
    rows.push_back(std::move(row));
}

Table Table::select(const std::vector<std::string>& names) const {
    Table out;
    out.columns = names;
    std::vector<std::size_t> idx;
    idx.reserve(names.size());
    for (const auto& n : names)
        idx.push_back(column_index(n));
    out.rows.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<std::string> r;
        r.reserve(idx.size());
        for (std::size_t i : idx)
            r.push_back(row[i]);
        out.rows.push_back(std::move(r));
    }
    return out;
}

std::string Table::to_csv() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << "\n";
    }
    return out.str();
}

namespace {
std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}
} // namespace

Table Table::from_csv(std::istream& in) {
    Table t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto row = split_csv_row(line);
        if (line_no == 1) {
            t.columns = row;
        } else {
            if (row.size() != t.columns.size())
                throw ParseError("csv line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(t.columns.size()) + " fields, got " +
                                 std::to_string(row.size()));
            t.rows.push_back(std::move(row));
        }
    }
    if (t.columns.empty())
        throw ParseError("csv input has no header row");
    return t;
}

Table Table::from_csv_text(const std::string& text) {
    std::istringstream ss(text);
    return from_csv(ss);
}

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace icnsim
