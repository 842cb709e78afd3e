#include "hydronudge/snapshot.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "hydronudge/error.hpp"

namespace hydronudge {

namespace {

constexpr std::array<char, 5> kMagic{'H', 'N', 'U', 'D', '1'};

template <typename U>
void put(std::ostream& out, U value) {
  std::array<char, sizeof(U)> bytes;
  for (std::size_t b = 0; b < sizeof(U); ++b) bytes[b] = char((value >> (8 * b)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& out, double v) { put<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v)); }

template <typename U>
U get(std::istream& in) {
  std::array<unsigned char, sizeof(U)> bytes;
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw ValidationError("truncated snapshot");
  U value = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) value |= U(bytes[b]) << (8 * b);
  return value;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get<std::uint64_t>(in)); }

}  // namespace

void write_snapshot(std::ostream& out, const DomainSpec& spec, double time, const PhysicalField& f) {
  if (f.nx() != spec.nx || f.ny() != spec.ny || f.nz() != spec.nz)
    throw ShapeError("snapshot field does not match its domain");
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, std::uint32_t(spec.nx));
  put<std::uint32_t>(out, std::uint32_t(spec.ny));
  put<std::uint32_t>(out, std::uint32_t(spec.nz));
  put<std::uint32_t>(out, std::uint32_t(f.components()));
  put_f64(out, spec.l);
  put_f64(out, spec.lx);
  put_f64(out, spec.ly);
  put_f64(out, time);
  for (double v : f.values()) put_f64(out, v);
  if (!out) throw Error("failed writing snapshot");
}

void write_snapshot(const std::filesystem::path& path, const DomainSpec& spec, double time,
                    const PhysicalField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string());
  write_snapshot(out, spec, time, f);
}

Snapshot read_snapshot(std::istream& in) {
  std::array<char, 5> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw ValidationError("not an HNUD1 snapshot");
  Snapshot s;
  s.spec.nx = int(get<std::uint32_t>(in));
  s.spec.ny = int(get<std::uint32_t>(in));
  s.spec.nz = int(get<std::uint32_t>(in));
  const int components = int(get<std::uint32_t>(in));
  s.spec.l = get_f64(in);
  s.spec.lx = get_f64(in);
  s.spec.ly = get_f64(in);
  s.time = get_f64(in);
  s.spec.validate();
  if (components <= 0 || components > 16) throw ValidationError("bad snapshot component count");
  s.values = PhysicalField(components, s.spec.nx, s.spec.ny, s.spec.nz);
  for (double& v : s.values.values()) v = get_f64(in);
  return s;
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_snapshot(in);
}

}  // namespace hydronudge
