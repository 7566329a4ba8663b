#ifndef LPTN_REPORT_IO_HPP
#define LPTN_REPORT_IO_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lptn/dataset.hpp"

namespace lptn {

// Line-oriented "key = value" report with dotted keys; order-preserving.
class Report {
  public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, long value);

    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;
    bool has(const std::string& key) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    void write(std::ostream& out) const;
    static Report parse(std::istream& in);

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

// Tab-separated table with a header row, preceded by optional "# key = value"
// metadata lines.
struct Table {
    Report metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<std::string>& row);
    void write(std::ostream& out) const;
    static Table parse(std::istream& in);
};

std::string format_double(double v);

// Delimiter-separated numeric file with a header row. The response column is
// selected by name; every other column becomes a covariate and an intercept
// column is synthesized in front. Parse failures name the offending row and
// column.
struct LoadedData {
    Dataset data;
    std::vector<std::string> covariate_names;  // excluding the intercept
    std::string response_name;
};

LoadedData load_dataset(const std::string& path, const std::string& response_column,
                        char delimiter = '\0' /* auto-detect */);

}  // namespace lptn

#endif
