#include "chsplit/snapshot.hpp"

#include <array>
#include <cstring>
#include <type_traits>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "chsplit/error.hpp"

namespace chsplit {

namespace {

constexpr std::array<char, 4> kMagic{'C', 'H', 'F', '1'};

template <typename T>
void put_le(std::vector<unsigned char>& buf, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U bits;
  std::memcpy(&bits, &value, sizeof(T));
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    buf.push_back(static_cast<unsigned char>((bits >> (8 * b)) & 0xffu));
  }
}

template <typename T>
T get_le(const unsigned char* p) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U bits = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) bits |= static_cast<U>(p[b]) << (8 * b);
  T value;
  std::memcpy(&value, &bits, sizeof(T));
  return value;
}

}  // namespace

void write_snapshot(std::ostream& out, const Snapshot& snap) {
  const auto values = snap.field.values();
  std::vector<unsigned char> buf;
  buf.reserve(kSnapshotHeaderBytes + 8 * values.size());
  buf.insert(buf.end(), kMagic.begin(), kMagic.end());
  put_le<std::uint32_t>(buf, snap.version);
  put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(snap.field.grid().n()));
  put_le<std::uint64_t>(buf, snap.step);
  put_le<double>(buf, snap.tau);
  put_le<double>(buf, snap.nu);
  for (double v : values) put_le<double>(buf, v);
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("snapshot write failed");
}

Snapshot read_snapshot(std::istream& in) {
  std::array<unsigned char, kSnapshotHeaderBytes> head{};
  in.read(reinterpret_cast<char*>(head.data()), head.size());
  if (in.gcount() != static_cast<std::streamsize>(head.size())) {
    throw IoError("snapshot truncated: header shorter than 36 bytes");
  }
  if (std::memcmp(head.data(), kMagic.data(), kMagic.size()) != 0) {
    throw IoError("snapshot has bad magic (expected CHF1)");
  }
  const auto version = get_le<std::uint32_t>(head.data() + 4);
  if (version != kSnapshotVersion) {
    throw IoError("unsupported snapshot version " + std::to_string(version));
  }
  const auto n = get_le<std::uint32_t>(head.data() + 8);
  const auto step = get_le<std::uint64_t>(head.data() + 12);
  const auto tau = get_le<double>(head.data() + 20);
  const auto nu = get_le<double>(head.data() + 28);

  const Grid2D grid(static_cast<int>(n));
  std::vector<unsigned char> payload(8 * grid.size());
  in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  if (in.gcount() != static_cast<std::streamsize>(payload.size())) {
    throw IoError("snapshot truncated: payload must be n^2 * 8 = " +
                  std::to_string(payload.size()) + " bytes");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw IoError("snapshot has trailing bytes after the payload");
  }
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = get_le<double>(payload.data() + 8 * i);
  return Snapshot{version, step, tau, nu, RealField(grid, std::move(values))};
}

void write_snapshot(const std::string& path, const Snapshot& snap) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  try {
    write_snapshot(out, snap);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  try {
    return read_snapshot(in);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

}  // namespace chsplit
