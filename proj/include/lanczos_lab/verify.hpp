#pragma once

// Self-check suite behind the `verify` command.

#include <string>
#include <vector>

namespace lanczos_lab {

enum class VerifyLevel { quick, full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::quick;
  /// Fault injection for testing the suite itself: perturbs one Gauss-Legendre
  /// weight before the exactness check.
  bool corrupt_legendre_weight = false;
  unsigned threads = 0;
};

struct VerifyCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool passed() const;
};

VerifyReport run_verify(const VerifyOptions& opts);

} // namespace lanczos_lab
