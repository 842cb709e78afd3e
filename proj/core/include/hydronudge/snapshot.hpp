#pragma once

#include <filesystem>
#include <iosfwd>

#include "hydronudge/domain.hpp"
#include "hydronudge/field.hpp"

namespace hydronudge {

struct Snapshot {
  DomainSpec spec;
  double time = 0.0;
  PhysicalField values;
};

/// HNUD1 layout: magic, u32 nx ny nz components, f64 l lx ly time, then the
/// values in (component, i, j, k) order. Everything little-endian.
void write_snapshot(std::ostream& out, const DomainSpec& spec, double time, const PhysicalField& f);
void write_snapshot(const std::filesystem::path& path, const DomainSpec& spec, double time,
                    const PhysicalField& f);
Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace hydronudge
