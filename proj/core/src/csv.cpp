#include "slowlight/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "slowlight/errors.hpp"

namespace slowlight {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& cell, std::size_t line_no) {
  const std::string text = trim(cell);
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    std::ostringstream msg;
    msg << "csv line " << line_no << ": '" << text << "' is not a number";
    throw DomainError(msg.str());
  }
  return value;
}

void require_header(const Table& table, std::initializer_list<const char*> expected) {
  bool ok = table.header.size() == expected.size();
  std::size_t i = 0;
  for (const char* name : expected) {
    if (!ok) break;
    ok = table.header[i++] == name;
  }
  if (!ok) {
    std::ostringstream msg;
    msg << "csv: expected header '";
    i = 0;
    for (const char* name : expected) msg << (i++ ? "," : "") << name;
    msg << "'";
    throw DomainError(msg.str());
  }
}

double uniform_step(const Table& table, const char* axis) {
  const auto& rows = table.rows;
  if (rows.size() < 2) throw GridError(std::string("csv: need at least two samples on ") + axis);
  const double step = (rows.back()[0] - rows.front()[0]) / static_cast<double>(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::abs(rows[i][0] - rows[i - 1][0] - step) > 1e-6 * std::abs(step)) {
      throw GridError(std::string("csv: ") + axis + " is not uniformly sampled");
    }
  }
  return step;
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  if (ec != std::errc()) throw DomainError("csv: number formatting failed");
  return std::string(buf.data(), ptr);
}

void write_table(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw DomainError("csv: row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

Table read_table(std::istream& in) {
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("csv: empty input");
  for (auto& name : split(line)) table.header.push_back(trim(name));
  if (table.header.empty() || table.header[0].empty()) throw DomainError("csv: missing header");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != table.header.size()) {
      std::ostringstream msg;
      msg << "csv line " << line_no << ": expected " << table.header.size() << " columns, found "
          << cells.size();
      throw DomainError(msg.str());
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) row.push_back(parse_number(cell, line_no));
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table envelope_table(const ComplexEnvelope& env) {
  Table table{{"time_ps", "re", "im"}, {}};
  table.rows.reserve(env.grid().size());
  for (std::size_t i = 0; i < env.grid().size(); ++i) {
    const Complex z = env.samples()[i];
    table.rows.push_back({env.grid().time(i), z.real(), z.imag()});
  }
  return table;
}

ComplexEnvelope envelope_from_table(const Table& table) {
  require_header(table, {"time_ps", "re", "im"});
  const double dt = uniform_step(table, "time_ps");
  TimeGrid grid(table.rows.front()[0], dt, table.rows.size());
  std::vector<Complex> samples;
  samples.reserve(table.rows.size());
  for (const auto& row : table.rows) samples.emplace_back(row[1], row[2]);
  return ComplexEnvelope(grid, std::move(samples));
}

Table spectrum_table(const SpectralEnvelope& spectrum) {
  Table table{{"detuning_invps", "re", "im"}, {}};
  table.rows.reserve(spectrum.grid().size());
  for (std::size_t k = 0; k < spectrum.grid().size(); ++k) {
    const Complex z = spectrum.samples()[k];
    table.rows.push_back({spectrum.grid().detuning(k), z.real(), z.imag()});
  }
  return table;
}

Table susceptibility_table(const Susceptibility& chi) {
  Table table{{"detuning_invps", "chi_re", "chi_im"}, {}};
  table.rows.reserve(chi.grid().size());
  for (std::size_t k = 0; k < chi.grid().size(); ++k) {
    const Complex z = chi.values()[k];
    table.rows.push_back({chi.grid().detuning(k), z.real(), z.imag()});
  }
  return table;
}

Susceptibility susceptibility_from_table(const Table& table) {
  require_header(table, {"detuning_invps", "chi_re", "chi_im"});
  const double step = uniform_step(table, "detuning_invps");
  FrequencyGrid grid(step, table.rows.size());
  if (std::abs(grid.detuning(0) - table.rows.front()[0]) > 1e-6 * step) {
    throw GridError("csv: susceptibility grid must place zero detuning at sample n/2");
  }
  std::vector<Complex> values;
  values.reserve(table.rows.size());
  for (const auto& row : table.rows) values.emplace_back(row[1], row[2]);
  return Susceptibility(grid, std::move(values));
}

AbsorptionData absorption_from_table(const Table& table) {
  AbsorptionData data{};
  if (table.header.size() == 2 && table.header[0] == "wavelength_nm" && table.header[1] == "absorption") {
    data.quantity = SpectrumQuantity::absorption;
  } else if (table.header.size() == 2 && table.header[0] == "wavelength_nm" &&
             table.header[1] == "optical_depth") {
    data.quantity = SpectrumQuantity::optical_depth;
  } else {
    throw DomainError("csv: expected header 'wavelength_nm,absorption' or 'wavelength_nm,optical_depth'");
  }
  data.records.reserve(table.rows.size());
  for (const auto& row : table.rows) data.records.push_back({row[0], row[1]});
  return data;
}

}  // namespace slowlight
