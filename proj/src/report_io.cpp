#include "lptn/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lptn/errors.hpp"

namespace lptn {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void Report::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

void Report::set(const std::string& key, double value) { set(key, format_double(value)); }

void Report::set(const std::string& key, long value) { set(key, std::to_string(value)); }

const std::string& Report::get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return v;
    throw input_error("report: missing key '" + key + "'");
}

double Report::get_double(const std::string& key) const {
    const std::string& raw = get(key);
    std::size_t pos = 0;
    double v = std::stod(raw, &pos);
    if (pos != raw.size()) throw input_error("report: key '" + key + "' is not numeric");
    return v;
}

bool Report::has(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return true;
    return false;
}

void Report::write(std::ostream& out) const {
    for (const auto& [k, v] : entries_) out << k << " = " << v << "\n";
}

namespace {

std::pair<std::string, std::string> split_key_value(const std::string& line, long line_no) {
    auto sep = line.find(" = ");
    if (sep == std::string::npos) {
        std::ostringstream msg;
        msg << "report: line " << line_no << " is not 'key = value'";
        throw input_error(msg.str());
    }
    return {line.substr(0, sep), line.substr(sep + 3)};
}

}  // namespace

Report Report::parse(std::istream& in) {
    Report report;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto [k, v] = split_key_value(line, line_no);
        report.entries_.emplace_back(k, v);
    }
    return report;
}

void Table::add_row(const std::vector<std::string>& row) {
    if (row.size() != columns.size())
        throw input_error("table: row width does not match the header");
    rows.push_back(row);
}

void Table::write(std::ostream& out) const {
    for (const auto& [k, v] : metadata.entries()) out << "# " << k << " = " << v << "\n";
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << columns[c] << (c + 1 < columns.size() ? "\t" : "\n");
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            out << row[c] << (c + 1 < row.size() ? "\t" : "\n");
}

Table Table::parse(std::istream& in) {
    Table table;
    std::string line;
    long line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            auto [k, v] = split_key_value(line.substr(2), line_no);
            table.metadata.set(k, v);
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, '\t')) cells.push_back(cell);
        if (!have_header) {
            table.columns = cells;
            have_header = true;
        } else {
            if (cells.size() != table.columns.size()) {
                std::ostringstream msg;
                msg << "table: line " << line_no << " has " << cells.size() << " cells, expected "
                    << table.columns.size();
                throw input_error(msg.str());
            }
            table.rows.push_back(std::move(cells));
        }
    }
    if (!have_header) throw input_error("table: missing header row");
    return table;
}

namespace {

char detect_delimiter(const std::string& header) {
    for (char candidate : {',', '\t', ';'})
        if (header.find(candidate) != std::string::npos) return candidate;
    return ' ';
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, delim)) {
        // trim surrounding whitespace
        auto b = cell.find_first_not_of(" \t\r");
        auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    return out;
}

}  // namespace

LoadedData load_dataset(const std::string& path, const std::string& response_column,
                        char delimiter) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open input file '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw input_error("input file '" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    char delim = delimiter == '\0' ? detect_delimiter(line) : delimiter;
    std::vector<std::string> header = split(line, delim);

    long response_idx = -1;
    for (std::size_t c = 0; c < header.size(); ++c)
        if (header[c] == response_column) response_idx = static_cast<long>(c);
    if (response_idx < 0)
        throw input_error("response column '" + response_column + "' not found in '" + path + "'");

    std::vector<std::vector<double>> values;
    long row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells = split(line, delim);
        if (cells.size() != header.size()) {
            std::ostringstream msg;
            msg << "input row " << row_no << " has " << cells.size() << " cells, expected "
                << header.size();
            throw input_error(msg.str());
        }
        std::vector<double> row(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            std::size_t pos = 0;
            bool ok = !cells[c].empty();
            double v = 0.0;
            if (ok) {
                try {
                    v = std::stod(cells[c], &pos);
                } catch (const std::exception&) {
                    ok = false;
                }
            }
            if (!ok || pos != cells[c].size()) {
                std::ostringstream msg;
                msg << "input row " << row_no << " column " << c + 1 << " ('" << header[c]
                    << "'): cell '" << cells[c] << "' is not numeric";
                throw input_error(msg.str());
            }
            row[c] = v;
        }
        values.push_back(std::move(row));
    }
    if (values.empty()) throw input_error("input file '" + path + "' has no data rows");

    const auto n = static_cast<Eigen::Index>(values.size());
    const auto p = static_cast<Eigen::Index>(header.size());  // covariates + intercept
    Eigen::MatrixXd x(n, p);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        Eigen::Index col = 1;
        for (std::size_t c = 0; c < values[static_cast<std::size_t>(i)].size(); ++c) {
            if (static_cast<long>(c) == response_idx) {
                y(i) = values[static_cast<std::size_t>(i)][c];
            } else {
                x(i, col++) = values[static_cast<std::size_t>(i)][c];
            }
        }
    }
    std::vector<std::string> names;
    for (std::size_t c = 0; c < header.size(); ++c)
        if (static_cast<long>(c) != response_idx) names.push_back(header[c]);
    return {Dataset(std::move(x), std::move(y)), std::move(names), response_column};
}

}  // namespace lptn
