#pragma once

// Data ingestion and tabular output.

#include <string>
#include <utility>
#include <vector>

#include "imconf/models/behrens_fisher.hpp"

namespace imconf::io {

/// One numeric value per row; blank lines, '#' comments and a non-numeric
/// header row are skipped. Throws ParameterError on any other bad row.
std::vector<double> read_values_csv(const std::string& path);

/// Two groups, either as summary rows `n,mean,variance` (header optional)
/// or as raw `group,value` rows with two distinct group labels in order of
/// first appearance.
models::behrens_fisher::BFData read_bf_csv(const std::string& path);

/// Metadata lines, a header and numeric rows. Cells are rendered with 12
/// significant digits so output is byte-stable.
struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const;
  std::string to_json() const;
};

/// Writes to path via a temporary file in the same directory and a rename.
void write_atomic(const std::string& path, const std::string& content);

std::string format_number(double v);

}  // namespace imconf::io
