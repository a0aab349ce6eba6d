#include "varest/csv.hpp"

#include "varest/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace varest {

std::string format_double(double v)
{
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return { buf.data(), res.ptr };
}

namespace {

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

double parse_number(std::string_view field, std::size_t line_no)
{
  double v = 0.0;
  if (!field.empty() && field.front() == '+')
    field.remove_prefix(1);
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size() ||
      !std::isfinite(v))
    throw Error(ErrorKind::MalformedInput,
                "line " + std::to_string(line_no) + ": not a number: '" +
                  std::string(field) + "'");
  return v;
}

} // namespace

const std::vector<double>& CsvTable::column(std::string_view name) const
{
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name)
      return columns[i];
  throw Error(ErrorKind::MalformedInput, "missing column '" + std::string(name) + "'");
}

CsvTable parse_csv(std::string_view text)
{
  if (text.starts_with("\xEF\xBB\xBF"))
    text.remove_prefix(3);
  CsvTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty())
      continue;
    const auto fields = split_commas(line);
    if (!have_header) {
      for (auto f : fields) {
        if (f.empty())
          throw Error(ErrorKind::MalformedInput, "empty column name in header");
        table.header.emplace_back(f);
      }
      table.columns.resize(table.header.size());
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size())
      throw Error(ErrorKind::MalformedInput,
                  "line " + std::to_string(line_no) + ": expected " +
                    std::to_string(table.header.size()) + " fields, got " +
                    std::to_string(fields.size()));
    for (std::size_t i = 0; i < fields.size(); ++i)
      table.columns[i].push_back(parse_number(fields[i], line_no));
  }
  if (!have_header)
    throw Error(ErrorKind::MalformedInput, "empty input: header row required");
  return table;
}

Sample parse_sample_csv(std::string_view text)
{
  const CsvTable table = parse_csv(text);
  if (table.header.size() != 2 || table.header[0] != "x" || table.header[1] != "y")
    throw Error(ErrorKind::MalformedInput, "header must be exactly 'x,y'");
  return Sample(table.columns[0], table.columns[1]);
}

Sample read_sample_csv(const std::filesystem::path& path)
{
  return parse_sample_csv(read_file(path));
}

std::string estimate_to_csv(const VarianceEstimate& estimate)
{
  std::string out = "x,vhat\n";
  for (std::size_t i = 0; i < estimate.grid.size(); ++i) {
    out += format_double(estimate.grid[i]);
    out += ',';
    out += format_double(estimate.values[i]);
    out += '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::MalformedInput, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

} // namespace varest
