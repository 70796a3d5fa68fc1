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

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rescomp::cli {

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

/// Minimal deterministic CSV emitter: fixed header, '\n' line ends, cells
/// are preformatted strings.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    void write_to(std::ostream& out) const;
    void write_file(const std::string& path) const;

    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Numeric table reader for files produced by this tool (header line, then
/// comma-separated numbers). Returns the header and a dense matrix.
struct CsvTable {
    std::vector<std::string> header;
    Eigen::MatrixXd values;
};

CsvTable read_numeric_csv(const std::string& path);

}  // namespace rescomp::cli
