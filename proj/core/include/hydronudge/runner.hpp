#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "hydronudge/config.hpp"

namespace hydronudge {

struct RunOutcome {
  /// Human-readable lines for stdout.
  std::string report;
  /// Set when the run stopped on non-finite data or failed checks.
  std::optional<std::string> failure;
  std::filesystem::path manifest;
};

/// Runs cfg.experiment and writes its outputs, the echoed config and
/// manifest.json under `root`. `threads` is used by sweeps.
RunOutcome execute(const RunConfig& cfg, const std::filesystem::path& root, int threads = 1);

}  // namespace hydronudge
