// Copyright 2026 the symtest authors.
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

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "symtest/dataset.hpp"
#include "symtest/errors.hpp"

namespace symtest {

namespace detail {

inline std::string_view trim(std::string_view cell) {
  while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
  while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
  return cell;
}

// Full-cell numeric parse; partial consumption counts as failure.
inline bool parse_cell(std::string_view cell, double& out) {
  cell = trim(cell);
  if (cell.empty()) return false;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

inline std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

}  // namespace detail

// Parses CSV text: rows are observations, columns are coordinates. A first
// line in which no cell parses as a number is treated as a header. Ragged
// rows and non-numeric data cells are rejected with their position.
inline Dataset parse_csv(std::string_view text) {
  std::vector<double> values;
  std::size_t columns = 0;
  std::size_t rows = 0;
  bool first_content_line = true;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (detail::trim(line).empty()) continue;

    const auto cells = detail::split_line(line);
    if (first_content_line) {
      first_content_line = false;
      bool any_numeric = false;
      double ignored;
      for (const auto cell : cells) {
        if (detail::parse_cell(cell, ignored)) {
          any_numeric = true;
          break;
        }
      }
      if (!any_numeric) continue;  // header line
      columns = cells.size();
    } else if (columns == 0) {
      columns = cells.size();
    }

    if (cells.size() != columns) {
      raise_at(ErrorCode::RaggedRows,
               "row has " + std::to_string(cells.size()) + " cells, expected " +
                   std::to_string(columns),
               line_no, cells.size());
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double value;
      if (!detail::parse_cell(cells[c], value)) {
        raise_at(ErrorCode::ParseError,
                 "cell '" + std::string(cells[c]) + "' is not a number", line_no, c + 1);
      }
      values.push_back(value);
    }
    ++rows;
  }

  if (rows == 0) {
    raise(ErrorCode::EmptyDataset, "no data rows");
  }
  Dataset out(rows, columns, std::move(values));
  out.validate();
  return out;
}

inline Dataset ingest_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(ErrorCode::FileNotFound, "cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

// Shortest decimal representation that round-trips the exact double.
inline std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

inline std::string dataset_to_csv(const Dataset& dataset) {
  std::string out;
  for (std::size_t r = 0; r < dataset.rows(); ++r) {
    for (std::size_t c = 0; c < dataset.dim(); ++c) {
      if (c) out.push_back(',');
      out += format_double(dataset.at(r, c));
    }
    out.push_back('\n');
  }
  return out;
}

inline void write_csv(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    raise(ErrorCode::FileNotFound, "cannot write '" + path + "'");
  }
  out << dataset_to_csv(dataset);
}

}  // namespace symtest
