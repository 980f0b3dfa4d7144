#include "chsplit/diagnostics_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "chsplit/error.hpp"

namespace chsplit {

namespace {

constexpr std::string_view kUnstableMarker = "# unstable: blow-up guard tripped at step ";

double parse_field(std::string_view s, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw IoError("diagnostics line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

int parse_int(std::string_view s, int line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw IoError("diagnostics line " + std::to_string(line) + ": bad integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string format_real(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void write_diagnostics(std::ostream& out, const RunDiagnostics& d) {
  out << kDiagnosticsHeader << '\n';
  for (const StepRecord& r : d.records) {
    out << r.step << ',' << format_real(r.time) << ',' << format_real(r.mass) << ','
        << format_real(r.energy) << ',' << format_real(r.e1_quadratic) << ','
        << format_real(r.e1_potential) << ',' << format_real(r.e1) << ',' << format_real(r.linf)
        << ',' << format_real(r.h1) << ',' << format_real(r.hk0) << ','
        << format_real(r.increment_l2) << ',' << format_real(r.cert_lhs) << ','
        << format_real(r.cert_rhs) << ',' << (r.cert_ok ? 1 : 0) << '\n';
  }
  if (d.unstable) out << kUnstableMarker << d.unstable_step << '\n';
  if (!out) throw IoError("diagnostics write failed");
}

void write_diagnostics(const std::string& path, const RunDiagnostics& d) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  try {
    write_diagnostics(out, d);
    out.flush();
    if (!out) throw IoError("flush failed");
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

DiagnosticsTable read_diagnostics(std::istream& in) {
  DiagnosticsTable table;
  std::string line;
  if (!std::getline(in, line) || line != kDiagnosticsHeader) {
    throw IoError("diagnostics header mismatch");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with(kUnstableMarker)) {
        table.unstable = true;
        table.unstable_step = parse_int(std::string_view(line).substr(kUnstableMarker.size()), line_no);
      }
      continue;
    }
    std::array<std::string_view, 14> cells;
    std::string_view rest = line;
    std::size_t count = 0;
    while (count < cells.size()) {
      const auto comma = rest.find(',');
      cells[count++] = rest.substr(0, comma);
      if (comma == std::string_view::npos) {
        rest = {};
        break;
      }
      rest.remove_prefix(comma + 1);
    }
    if (count != cells.size() || !rest.empty()) {
      throw IoError("diagnostics line " + std::to_string(line_no) + ": expected 14 columns");
    }
    StepRecord r;
    r.step = parse_int(cells[0], line_no);
    r.time = parse_field(cells[1], line_no);
    r.mass = parse_field(cells[2], line_no);
    r.energy = parse_field(cells[3], line_no);
    r.e1_quadratic = parse_field(cells[4], line_no);
    r.e1_potential = parse_field(cells[5], line_no);
    r.e1 = parse_field(cells[6], line_no);
    r.linf = parse_field(cells[7], line_no);
    r.h1 = parse_field(cells[8], line_no);
    r.hk0 = parse_field(cells[9], line_no);
    r.increment_l2 = parse_field(cells[10], line_no);
    r.cert_lhs = parse_field(cells[11], line_no);
    r.cert_rhs = parse_field(cells[12], line_no);
    r.cert_ok = parse_int(cells[13], line_no) != 0;
    table.records.push_back(r);
  }
  return table;
}

DiagnosticsTable read_diagnostics(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path + " for reading");
  try {
    return read_diagnostics(in);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

}  // namespace chsplit
