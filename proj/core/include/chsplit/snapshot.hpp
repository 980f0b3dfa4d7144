#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "chsplit/field.hpp"

namespace chsplit {

/// CHF1 field snapshot, all integers and floats little-endian:
///
///   offset  size  field
///   0       4     magic "CHF1"
///   4       4     version (u32, currently 1)
///   8       4     n (u32)
///   12      8     step (u64)
///   20      8     tau (f64)
///   28      8     nu (f64)
///   36      8n^2  nodal values, row-major binary64
struct Snapshot {
  std::uint32_t version = 1;
  std::uint64_t step = 0;
  double tau = 0.0;
  double nu = 0.0;
  RealField field;
};

inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 36;

void write_snapshot(std::ostream& out, const Snapshot& snap);
Snapshot read_snapshot(std::istream& in);

/// File wrappers; IoError carries the path.
void write_snapshot(const std::string& path, const Snapshot& snap);
Snapshot read_snapshot(const std::string& path);

}  // namespace chsplit
