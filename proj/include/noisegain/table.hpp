#pragma once

#include <string>
#include <variant>
#include <vector>

namespace noisegain {

enum class TableFormat { csv, records };

// Small table assembler with deterministic byte output: numbers are fixed
// 6-decimal, key order follows the column order given at construction.
class Table {
public:
    using Cell = std::variant<std::string, double, long long>;

    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<Cell> cells);
    std::string render(TableFormat format) const;
    const std::vector<std::string>& columns() const { return columns_; }

    static std::string format_number(double value);

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

}  // namespace noisegain
