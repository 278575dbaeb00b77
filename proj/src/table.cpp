#include "noisegain/table.hpp"

#include <cstdio>

#include "noisegain/errors.hpp"

namespace noisegain {

void Table::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns_.size()) {
        throw InvalidArgument("row width does not match column count");
    }
    rows_.push_back(std::move(cells));
}

std::string Table::format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::string Table::render(TableFormat format) const {
    std::string out;
    auto cell_text = [](const Cell& c) -> std::string {
        if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
        if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
        return format_number(std::get<double>(c));
    };

    if (format == TableFormat::csv) {
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            if (c) out += ',';
            out += columns_[c];
        }
        out += '\n';
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out += ',';
                out += cell_text(row[c]);
            }
            out += '\n';
        }
        return out;
    }

    // Line-delimited records, keys in column order. Values are JSON strings
    // for text cells and bare literals for numbers.
    for (const auto& row : rows_) {
        out += '{';
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += '"';
            out += columns_[c];
            out += "\":";
            if (std::holds_alternative<std::string>(row[c])) {
                out += '"';
                out += std::get<std::string>(row[c]);
                out += '"';
            } else {
                out += cell_text(row[c]);
            }
        }
        out += "}\n";
    }
    return out;
}

}  // namespace noisegain
