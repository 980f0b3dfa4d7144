#include "chsplit/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "chsplit/error.hpp"

namespace chsplit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ValidationError("unparsable number '" + std::string(text) + "'");
  }
  return value;
}

long long parse_integer(std::string_view text) {
  text = trim(text);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ValidationError("unparsable integer '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> values;
  for (std::string_view part : split(text, ',')) values.push_back(parse_real(part));
  return values;
}

double positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(what) + " must be positive");
  return v;
}

int int_at_least(long long v, long long lo, const char* what) {
  if (v < lo || v > std::numeric_limits<int>::max()) {
    throw ValidationError(std::string(what) + " must be an integer >= " + std::to_string(lo));
  }
  return static_cast<int>(v);
}

SplitOrder parse_order(std::string_view v) {
  if (v == "LN") return SplitOrder::LN;
  if (v == "NL") return SplitOrder::NL;
  throw ValidationError("order must be LN or NL");
}

std::vector<ModeTerm> parse_modes(std::string_view text) {
  std::vector<ModeTerm> modes;
  for (std::string_view term : split(text, ';')) {
    if (term.empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < term.size()) {
      const auto start = term.find_first_not_of(" \t", pos);
      if (start == std::string_view::npos) break;
      const auto end = term.find_first_of(" \t", start);
      fields.push_back(term.substr(start, end == std::string_view::npos ? end : end - start));
      pos = end == std::string_view::npos ? term.size() : end;
    }
    if (fields.size() != 4) {
      throw ValidationError("each mode needs 'k1 k2 cos_amp sin_amp', got '" + std::string(term) + "'");
    }
    ModeTerm m;
    m.k1 = static_cast<int>(parse_integer(fields[0]));
    m.k2 = static_cast<int>(parse_integer(fields[1]));
    m.cos_amp = parse_real(fields[2]);
    m.sin_amp = parse_real(fields[3]);
    if (m.k1 == 0 && m.k2 == 0) throw ValidationError("mode k = (0, 0) would break mean-zero data");
    if (!std::isfinite(m.cos_amp) || !std::isfinite(m.sin_amp)) {
      throw ValidationError("mode amplitudes must be finite");
    }
    modes.push_back(m);
  }
  if (modes.empty()) throw ValidationError("modes list is empty");
  return modes;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::unordered_map<std::string, Setter>& setters() {
  static const std::unordered_map<std::string, Setter> table = {
      {"nu", [](RunConfig& c, std::string_view v) { c.params.nu = positive(parse_real(v), "nu"); }},
      {"tau",
       [](RunConfig& c, std::string_view v) {
         const double tau = parse_real(v);
         if (!(tau > 0.0) || !std::isfinite(tau)) {
           throw ValidationError("tau must be positive (backward flow ill-posed)");
         }
         c.params.tau = tau;
       }},
      {"n",
       [](RunConfig& c, std::string_view v) {
         const long long n = parse_integer(v);
         if (n < 8 || n % 2 != 0 || n > 65536) {
           throw ValidationError("n must be an even integer in [8, 65536]");
         }
         c.params.n = static_cast<int>(n);
       }},
      {"dealias",
       [](RunConfig& c, std::string_view v) {
         if (v == "two-thirds") {
           c.params.dealias = Dealias::two_thirds;
         } else if (v == "none") {
           c.params.dealias = Dealias::none;
         } else {
           throw ValidationError("dealias must be two-thirds or none");
         }
       }},
      {"order", [](RunConfig& c, std::string_view v) { c.params.order = parse_order(v); }},
      {"steps", [](RunConfig& c, std::string_view v) { c.steps = int_at_least(parse_integer(v), 1, "steps"); }},
      {"k0", [](RunConfig& c, std::string_view v) { c.k0 = int_at_least(parse_integer(v), 0, "k0"); }},
      {"blowup", [](RunConfig& c, std::string_view v) { c.blowup = positive(parse_real(v), "blowup"); }},
      {"T", [](RunConfig& c, std::string_view v) { c.horizon = positive(parse_real(v), "T"); }},
      {"taus",
       [](RunConfig& c, std::string_view v) {
         c.taus = parse_real_list(v);
         for (double t : c.taus) {
           if (!(t > 0.0) || !std::isfinite(t)) {
             throw ValidationError("tau must be positive (backward flow ill-posed)");
           }
         }
       }},
      {"ref_divisor",
       [](RunConfig& c, std::string_view v) {
         const double d = parse_real(v);
         if (!(d >= 32.0) || !std::isfinite(d) || d != std::floor(d)) {
           throw ValidationError("ref_divisor must be an integer >= 32");
         }
         c.ref_divisor = d;
       }},
      {"reference_order", [](RunConfig& c, std::string_view v) { c.reference_order = parse_order(v); }},
      {"init",
       [](RunConfig& c, std::string_view v) {
         if (v == "modes") {
           c.initial.kind = InitialDataSpec::Kind::modes;
         } else if (v == "random") {
           c.initial.kind = InitialDataSpec::Kind::random_band_limited;
         } else if (v == "file") {
           c.initial.kind = InitialDataSpec::Kind::file;
         } else {
           throw ValidationError("init must be modes, random or file");
         }
       }},
      {"modes", [](RunConfig& c, std::string_view v) { c.initial.modes = parse_modes(v); }},
      {"seed",
       [](RunConfig& c, std::string_view v) {
         const long long s = parse_integer(v);
         if (s < 0) throw ValidationError("seed must be non-negative");
         c.initial.seed = static_cast<std::uint64_t>(s);
       }},
      {"band", [](RunConfig& c, std::string_view v) { c.initial.band = int_at_least(parse_integer(v), 1, "band"); }},
      {"amplitude",
       [](RunConfig& c, std::string_view v) { c.initial.amplitude = positive(parse_real(v), "amplitude"); }},
      {"h1", [](RunConfig& c, std::string_view v) { c.initial.h1_target = positive(parse_real(v), "h1"); }},
      {"init_file",
       [](RunConfig& c, std::string_view v) {
         if (v.empty()) throw ValidationError("init_file must not be empty");
         c.initial.path = std::string(v);
       }},
      {"output",
       [](RunConfig& c, std::string_view v) {
         if (v.empty()) throw ValidationError("output must not be empty");
         c.output = std::string(v);
       }},
      {"snapshot_prefix",
       [](RunConfig& c, std::string_view v) {
         if (v.empty()) throw ValidationError("snapshot_prefix must not be empty");
         c.snapshot_prefix = std::string(v);
       }},
      {"c", [](RunConfig& c, std::string_view v) { c.constants.c = positive(parse_real(v), "c"); }},
      {"c1", [](RunConfig& c, std::string_view v) { c.constants.c1 = positive(parse_real(v), "c1"); }},
      {"c0_1", [](RunConfig& c, std::string_view v) { c.constants.c0_1 = positive(parse_real(v), "c0_1"); }},
      {"c0_2", [](RunConfig& c, std::string_view v) { c.constants.c0_2 = positive(parse_real(v), "c0_2"); }},
      {"d1", [](RunConfig& c, std::string_view v) { c.d1 = positive(parse_real(v), "d1"); }},
      {"probe_steps",
       [](RunConfig& c, std::string_view v) {
         c.bisection.probe_steps = int_at_least(parse_integer(v), 1, "probe_steps");
       }},
      {"tau_lo", [](RunConfig& c, std::string_view v) { c.bisection.tau_lo = positive(parse_real(v), "tau_lo"); }},
      {"tau_hi", [](RunConfig& c, std::string_view v) { c.bisection.tau_hi = positive(parse_real(v), "tau_hi"); }},
      {"bisection_tol",
       [](RunConfig& c, std::string_view v) {
         const double tol = parse_real(v);
         if (!(tol > 0.0 && tol < 1.0)) throw ValidationError("bisection_tol must lie in (0, 1)");
         c.bisection.rel_tol = tol;
       }},
      {"kernel",
       [](RunConfig& c, std::string_view v) {
         if (v == "K") {
           c.kernel = KernelVariant::full;
         } else if (v == "K_tilde") {
           c.kernel = KernelVariant::mean_zero;
         } else {
           throw ValidationError("kernel must be K or K_tilde");
         }
       }},
      {"kernel_p",
       [](RunConfig& c, std::string_view v) {
         const double p = parse_real(v);
         if (!(p >= 1.0)) throw ValidationError("kernel_p must be >= 1 (or inf)");
         c.kernel_p = p;
       }},
      {"betas",
       [](RunConfig& c, std::string_view v) {
         c.betas = parse_real_list(v);
         for (double b : c.betas) positive(b, "beta");
       }},
      {"smoothing_fields",
       [](RunConfig& c, std::string_view v) {
         c.smoothing_fields = int_at_least(parse_integer(v), 1, "smoothing_fields");
       }},
  };
  return table;
}

[[noreturn]] void fail(int line, std::string_view key, const std::string& message) {
  std::ostringstream msg;
  msg << "line " << line;
  if (!key.empty()) msg << ", key '" << key << "'";
  msg << ": " << message;
  throw ValidationError(msg.str());
}

int line_of(const RunConfig& c, const std::string& key) {
  const auto it = c.key_lines.find(key);
  return it == c.key_lines.end() ? 0 : it->second;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? end : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, {}, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, {}, "missing key before '='");

    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) fail(line_no, key, "unknown key");
    if (config.key_lines.contains(key)) {
      fail(line_no, key, "duplicate key (first set on line " + std::to_string(config.key_lines[key]) + ")");
    }
    if (value.empty()) fail(line_no, key, "missing value");
    try {
      it->second(config, value);
    } catch (const ValidationError& e) {
      fail(line_no, key, e.what());
    }
    config.key_lines[key] = line_no;
  }

  if (config.bisection.tau_lo >= config.bisection.tau_hi) {
    fail(line_of(config, config.key_lines.contains("tau_lo") ? "tau_lo" : "tau_hi"),
         config.key_lines.contains("tau_lo") ? "tau_lo" : "tau_hi", "tau_lo must be below tau_hi");
  }
  using Kind = InitialDataSpec::Kind;
  if (config.initial.kind == Kind::file && config.initial.path.empty()) {
    fail(line_of(config, "init"), "init_file", "init = file requires init_file");
  }
  if (config.initial.kind != Kind::file && config.key_lines.contains("init_file")) {
    fail(line_of(config, "init_file"), "init_file", "init_file requires init = file");
  }
  if (config.initial.kind == Kind::modes && config.initial.modes.empty()) {
    config.initial.modes = {ModeTerm{1, 0, 0.1, 0.0}};
  }
  if (config.initial.kind == Kind::modes) {
    const int half = config.params.n / 2;
    for (const ModeTerm& m : config.initial.modes) {
      if (std::abs(m.k1) >= half || std::abs(m.k2) >= half) {
        fail(line_of(config, "modes"), "modes",
             "mode (" + std::to_string(m.k1) + ", " + std::to_string(m.k2) + ") exceeds the n = " +
                 std::to_string(config.params.n) + " lattice");
      }
    }
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void validate_convergence_config(const RunConfig& config) {
  const int line = line_of(config, "taus");
  if (config.taus.size() < 4) fail(line, "taus", "converge needs at least 4 taus");
  for (double tau : config.taus) {
    const double steps = std::round(config.horizon / tau);
    if (steps < 1.0 || std::abs(steps * tau - config.horizon) > 1e-12 * config.horizon) {
      std::ostringstream msg;
      msg << "tau = " << tau << " does not divide T = " << config.horizon;
      fail(line, "taus", msg.str());
    }
  }
}

}  // namespace chsplit
