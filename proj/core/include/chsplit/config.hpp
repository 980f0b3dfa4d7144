#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chsplit/energy.hpp"
#include "chsplit/initial_data.hpp"
#include "chsplit/kernels.hpp"
#include "chsplit/propagators.hpp"

namespace chsplit {

/// Everything one CLI invocation needs, validated before any computation starts.
///
/// Text format: one `key = value` per line, `#` starts a comment, blank lines ignored,
/// unknown or repeated keys rejected. Recognised keys and defaults:
///
///   nu = 1                 tau = 0.001            n = 64
///   dealias = two-thirds   (or none)              order = LN  (or NL)
///   steps = 100            k0 = 2                 blowup = 1e6
///   T = 0.5                taus = t1, t2, ...     ref_divisor = 32
///   reference_order = LN|NL (defaults to order)
///   init = modes|random|file
///   modes = k1 k2 a b; ...  (a cos(k.x) + b sin(k.x) terms)
///   seed = 0   band = 4   amplitude = 0.1   h1 = <target H1 norm>   init_file = path
///   output = diagnostics.csv   snapshot_prefix = snapshot
///   c = 1   c1 = 1   c0_1 = 1   c0_2 = 1   d1 = 1
///   probe_steps = 200   tau_lo = 1e-6   tau_hi = 1   bisection_tol = 0.02
///   kernel = K_tilde|K   kernel_p = 2 (or inf)   betas = b1, b2, ...
///   smoothing_fields = 1000  (corpus size for the kernel-study smoothing sweep)
struct RunConfig {
  SolverParams params;
  InitialDataSpec initial;
  int steps = 100;
  int k0 = 2;
  double blowup = 1e6;

  double horizon = 0.5;
  std::vector<double> taus;
  double ref_divisor = 32.0;
  std::optional<SplitOrder> reference_order;

  std::string output = "diagnostics.csv";
  std::string snapshot_prefix = "snapshot";

  ThresholdConstants constants;
  double d1 = 1.0;
  BisectionOptions bisection;

  KernelVariant kernel = KernelVariant::mean_zero;
  double kernel_p = 2.0;
  std::vector<double> betas;
  int smoothing_fields = 1000;

  /// Line on which each key was set, for diagnostics.
  std::map<std::string, int> key_lines;
};

/// Throws ValidationError naming the key and line for unknown keys, unparsable values or
/// precondition violations.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Cross-field checks for the converge subcommand: at least four taus, each dividing T.
void validate_convergence_config(const RunConfig& config);

}  // namespace chsplit
