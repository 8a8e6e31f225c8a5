#include "simcred/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "simcred/errors.hpp"

namespace simcred {

namespace {

struct Row {
  std::size_t line = 0;
  std::vector<std::string> cells;
};

struct Table {
  std::string path;
  std::vector<std::string> header;
  std::vector<Row> rows;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string where(const Table& t, std::size_t line) {
  return t.path + ":" + std::to_string(line);
}

Table read_table(const std::filesystem::path& path, std::size_t min_cols, std::size_t max_cols) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  Table t;
  t.path = path.string();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      if (t.header.size() < min_cols || t.header.size() > max_cols) {
        throw InputError(where(t, lineno) + ": header has " + std::to_string(t.header.size()) +
                         " columns, expected " + std::to_string(min_cols) +
                         (min_cols == max_cols ? "" : " to " + std::to_string(max_cols)));
      }
      continue;
    }
    if (cells.size() < min_cols || cells.size() > t.header.size()) {
      throw InputError(where(t, lineno) + ": expected " + std::to_string(t.header.size()) +
                       " fields, found " + std::to_string(cells.size()));
    }
    t.rows.push_back({lineno, std::move(cells)});
  }
  if (t.header.empty()) throw InputError(t.path + ": missing header row");
  return t;
}

double parse_number(const Table& t, const Row& row, std::size_t col) {
  const std::string& s = row.cells[col];
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
  if (s.empty() || ec != std::errc() || ptr != last) {
    throw InputError(where(t, row.line) + ": column " + std::to_string(col + 1) +
                     ": not a number: '" + s + "'");
  }
  if (!std::isfinite(value)) {
    throw InputError(where(t, row.line) + ": column " + std::to_string(col + 1) +
                     ": non-finite value '" + s + "'");
  }
  return value;
}

std::optional<double> parse_optional(const Table& t, const Row& row, std::size_t col) {
  if (col >= row.cells.size() || row.cells[col].empty()) return std::nullopt;
  return parse_number(t, row, col);
}

// "pitch[rad]" -> {"pitch", "rad"}
std::pair<std::string, std::string> split_unit(const std::string& header) {
  const auto open = header.find('[');
  const auto close = header.rfind(']');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    return {header, {}};
  }
  return {trim(header.substr(0, open)), trim(header.substr(open + 1, close - open - 1))};
}

std::vector<std::vector<double>> numeric_columns(const Table& t, std::size_t ncols) {
  std::vector<std::vector<double>> cols(ncols);
  for (const auto& row : t.rows) {
    if (row.cells.size() != ncols) {
      throw InputError(where(t, row.line) + ": expected " + std::to_string(ncols) + " fields");
    }
    for (std::size_t c = 0; c < ncols; ++c) cols[c].push_back(parse_number(t, row, c));
  }
  return cols;
}

template <class Fn>
auto with_context(const Table& t, Fn&& fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    throw InputError(t.path + ": " + e.what());
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  return out;
}

std::string with_unit(const std::string& name, const std::string& unit) {
  return unit.empty() ? name : name + "[" + unit + "]";
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

TimeSeries read_time_series_csv(const std::filesystem::path& path) {
  const Table t = read_table(path, 2, 2);
  auto cols = numeric_columns(t, 2);
  const auto [tname, tunit] = split_unit(t.header[0]);
  const auto [yname, yunit] = split_unit(t.header[1]);
  return with_context(t, [&] {
    return TimeSeries(std::move(cols[0]), std::move(cols[1]), yname, tunit, yunit);
  });
}

void write_time_series_csv(const std::filesystem::path& path, const TimeSeries& s) {
  auto out = open_out(path);
  out << with_unit("t", s.abscissa_unit()) << ','
      << with_unit(s.label().empty() ? "y" : s.label(), s.value_unit()) << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << format_number(s.abscissa()[i]) << ',' << format_number(s.values()[i]) << '\n';
  }
}

SweepRecord read_sweep_csv(const std::filesystem::path& path) {
  const Table t = read_table(path, 3, 3);
  auto cols = numeric_columns(t, 3);
  const auto [tname, tunit] = split_unit(t.header[0]);
  const auto [xname, xunit] = split_unit(t.header[1]);
  const auto [yname, yunit] = split_unit(t.header[2]);
  return with_context(t, [&] {
    TimeSeries x(cols[0], std::move(cols[1]), xname, tunit, xunit);
    TimeSeries y(std::move(cols[0]), std::move(cols[2]), yname, tunit, yunit);
    return SweepRecord::make(std::move(x), std::move(y));
  });
}

void write_sweep_csv(const std::filesystem::path& path, const SweepRecord& rec) {
  auto out = open_out(path);
  out << with_unit("t", rec.input.abscissa_unit()) << ','
      << with_unit("x", rec.input.value_unit()) << ',' << with_unit("y", rec.output.value_unit())
      << '\n';
  for (std::size_t i = 0; i < rec.input.size(); ++i) {
    out << format_number(rec.input.abscissa()[i]) << ',' << format_number(rec.input.values()[i])
        << ',' << format_number(rec.output.values()[i]) << '\n';
  }
}

FrequencyResponse read_bode_csv(const std::filesystem::path& path) {
  const Table t = read_table(path, 4, 4);
  auto cols = numeric_columns(t, 4);
  FrequencyResponse fr{std::move(cols[0]), std::move(cols[1]), unwrap_degrees(std::move(cols[2])),
                       std::move(cols[3])};
  with_context(t, [&] {
    validate(fr);
    return 0;
  });
  return fr;
}

void write_bode_csv(const std::filesystem::path& path, const FrequencyResponse& fr) {
  auto out = open_out(path);
  out << "f_rad_s,mag_db,phase_deg,coherence\n";
  for (std::size_t i = 0; i < fr.size(); ++i) {
    out << format_number(fr.freqs[i]) << ',' << format_number(fr.magnitude_db[i]) << ','
        << format_number(fr.phase_deg[i]) << ',' << format_number(fr.coherence[i]) << '\n';
  }
}

std::vector<PerformanceSample> read_performance_csv(const std::filesystem::path& path) {
  const Table t = read_table(path, 4, 6);
  std::vector<PerformanceSample> out;
  for (const auto& row : t.rows) {
    PerformanceSample s;
    s.name = row.cells[0];
    s.unit = row.cells[1];
    if (s.name.empty()) throw InputError(where(t, row.line) + ": empty sample name");
    s.p_exp = parse_number(t, row, 2);
    s.p_sim = parse_number(t, row, 3);
    s.k_p_override = parse_optional(t, row, 4);
    s.eps_override = parse_optional(t, row, 5);
    try {
      validate(s);
    } catch (const DomainError& e) {
      throw InputError(where(t, row.line) + ": " + e.what());
    }
    out.push_back(std::move(s));
  }
  return out;
}

void write_performance_csv(const std::filesystem::path& path,
                           const std::vector<PerformanceSample>& samples) {
  auto out = open_out(path);
  out << "name,unit,p_exp,p_sim,k_p,eps\n";
  for (const auto& s : samples) {
    out << s.name << ',' << s.unit << ',' << format_number(s.p_exp) << ','
        << format_number(s.p_sim) << ',' << (s.k_p_override ? format_number(*s.k_p_override) : "")
        << ',' << (s.eps_override ? format_number(*s.eps_override) : "") << '\n';
  }
}

}  // namespace simcred
