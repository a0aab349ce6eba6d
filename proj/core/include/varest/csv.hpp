#pragma once

#include "varest/estimator.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace varest {

//! Shortest decimal text that parses back to the same double.
std::string format_double(double v);

//! Parses comma-separated text with a required header row into named
//! numeric columns. Throws MalformedInput on any structural or numeric
//! problem.
struct CsvTable
{
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  const std::vector<double>& column(std::string_view name) const;
};
CsvTable parse_csv(std::string_view text);

//! Reads a `x,y` file into a Sample. Structural problems raise
//! MalformedInput; ordering/range problems raise InvalidSample.
Sample read_sample_csv(const std::filesystem::path& path);
Sample parse_sample_csv(std::string_view text);

//! `x,vhat` rows for each grid point.
std::string estimate_to_csv(const VarianceEstimate& estimate);

//! Writes via a temporary file in the same directory and an atomic rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

} // namespace varest
