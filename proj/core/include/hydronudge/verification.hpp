#pragma once

#include <string>
#include <vector>

#include "hydronudge/domain.hpp"

namespace hydronudge {

struct OperatorCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Property checks of transforms, projection, vertical velocity, the
/// observation operator and the perturbed Stokes operator on one grid.
/// The observation constant is re-measured on the grid refined by two in
/// every direction.
std::vector<OperatorCheck> verify_operators(const DomainSpec& spec, std::uint64_t seed = 11);

std::string format_checks(const std::vector<OperatorCheck>& checks);

}  // namespace hydronudge
