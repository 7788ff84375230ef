#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace wiggly {

// Deterministic CSV output: %.17g formatting, \n endings, one quantity per
// column. Rows containing NaN are dropped and counted instead of written.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns);

    void row(std::initializer_list<double> values);
    void row(const std::vector<double>& values);

    int skipped_rows() const { return skipped_; }
    std::string str() const;
    void write(const std::string& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
    int skipped_ = 0;
};

std::string format_double(double x);

}  // namespace wiggly
