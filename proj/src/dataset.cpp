// Copyright 2026 The Tablewright Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tablewright/dataset.hpp"

#include <charconv>
#include <sstream>

#include "tablewright/error.hpp"
#include "tablewright/serialize.hpp"

namespace tablewright {

namespace {

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view cell = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) cell.remove_suffix(1);
    cells.push_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::uint64_t parse_cell(std::string_view cell, std::size_t line, const std::string& column) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || end != cell.data() + cell.size())
    throw ValidationError("line " + std::to_string(line) + ", column '" + column + "': expected an unsigned integer, got '" +
                          std::string(cell) + "'");
  return v;
}

}  // namespace

Dataset parse_dataset_csv(std::string_view text, const FeatureSchema& schema) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ValidationError("dataset is empty: missing header row");

  const auto header = split_row(lines[0]);
  std::vector<int> column_feature(header.size(), -1);
  int label_column = -1;
  std::vector<bool> seen(schema.size(), false);
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string name(header[c]);
    if (name == "label") {
      label_column = static_cast<int>(c);
      continue;
    }
    bool found = false;
    for (std::size_t f = 0; f < schema.size(); ++f)
      if (schema.features[f].name == name) {
        if (seen[f]) throw ValidationError("column '" + name + "' appears twice");
        seen[f] = true;
        column_feature[c] = static_cast<int>(f);
        found = true;
      }
    if (!found) throw ValidationError("column '" + name + "' is not a feature of the model");
  }
  for (std::size_t f = 0; f < schema.size(); ++f)
    if (!seen[f]) throw ValidationError("column '" + schema.features[f].name + "' is missing");

  Dataset ds;
  ds.has_labels = label_column >= 0;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    if (lines[l].empty()) continue;
    const auto cells = split_row(lines[l]);
    if (cells.size() != header.size())
      throw ValidationError("line " + std::to_string(l + 1) + ": expected " + std::to_string(header.size()) +
                            " cells, got " + std::to_string(cells.size()));
    FeatureVector x(schema.size(), 0);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (static_cast<int>(c) == label_column) {
        ds.labels.push_back(static_cast<Label>(parse_cell(cells[c], l + 1, "label")));
        continue;
      }
      const std::size_t f = static_cast<std::size_t>(column_feature[c]);
      const std::uint64_t v = parse_cell(cells[c], l + 1, schema.features[f].name);
      if (v > schema.max_value(f))
        throw ValidationError("line " + std::to_string(l + 1) + ", column '" + schema.features[f].name + "': value " +
                              std::to_string(v) + " exceeds " + std::to_string(schema.width(f)) + "-bit domain");
      x[f] = v;
    }
    ds.rows.push_back(std::move(x));
  }
  return ds;
}

Dataset read_dataset_csv(const std::string& path, const FeatureSchema& schema) {
  return parse_dataset_csv(read_text_file(path), schema);
}

std::string format_dataset_csv(const FeatureSchema& schema, const std::vector<FeatureVector>& rows,
                               const std::vector<Label>& labels) {
  std::ostringstream out;
  for (std::size_t f = 0; f < schema.size(); ++f) out << (f ? "," : "") << schema.features[f].name;
  if (!labels.empty()) out << ",label";
  out << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t f = 0; f < rows[r].size(); ++f) out << (f ? "," : "") << rows[r][f];
    if (!labels.empty()) out << "," << labels[r];
    out << "\n";
  }
  return out.str();
}

}  // namespace tablewright
