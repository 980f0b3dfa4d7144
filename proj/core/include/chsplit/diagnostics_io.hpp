#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "chsplit/harness.hpp"

namespace chsplit {

inline constexpr const char* kDiagnosticsHeader =
    "step,time,mass,E,E1_quad,E1_pot,E1,linf,h1,hk0,inc_l2,cert_lhs,cert_rhs,cert_ok";

/// One CSV row per step (steps 1..N), reals in shortest round-trip form. An unstable run
/// ends with the row of the step that tripped the guard followed by the comment line
/// "# unstable: blow-up guard tripped at step N".
void write_diagnostics(std::ostream& out, const RunDiagnostics& d);
void write_diagnostics(const std::string& path, const RunDiagnostics& d);

struct DiagnosticsTable {
  std::vector<StepRecord> records;
  bool unstable = false;
  int unstable_step = -1;
};

/// Parses what write_diagnostics produced; lines starting with '#' other than the
/// unstable marker are ignored.
DiagnosticsTable read_diagnostics(std::istream& in);
DiagnosticsTable read_diagnostics(const std::string& path);

/// Shortest decimal that parses back to exactly v.
std::string format_real(double v);

}  // namespace chsplit
