// Copyright 2026 The rescomp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rescomp/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rescomp::cli {

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) throw std::invalid_argument("CsvWriter: empty header");
}

void CsvWriter::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) {
        throw std::invalid_argument("CsvWriter: row width does not match header");
    }
    rows_.push_back(std::move(cells));
}

void CsvWriter::write_to(std::ostream& out) const {
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    };
    emit(header_);
    for (const auto& row : rows_) emit(row);
}

void CsvWriter::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_to(out);
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

CsvTable read_numeric_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");

    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    {
        std::stringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) table.header.push_back(cell);
    }
    if (table.header.empty()) throw std::runtime_error(path + ": empty header");

    std::vector<std::vector<double>> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                std::size_t consumed = 0;
                row.push_back(std::stod(cell, &consumed));
                if (consumed != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(line_no)
                                         + ": '" + cell + "' is not a number");
            }
        }
        if (row.size() != table.header.size()) {
            throw std::runtime_error(path + ":" + std::to_string(line_no)
                                     + ": expected " + std::to_string(table.header.size())
                                     + " cells, got " + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }

    table.values.resize(static_cast<long>(rows.size()), static_cast<long>(table.header.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            table.values(static_cast<long>(r), static_cast<long>(c)) = rows[r][c];
        }
    }
    return table;
}

}  // namespace rescomp::cli
