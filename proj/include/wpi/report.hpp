#pragma once

#include <string>
#include <vector>

namespace wpi {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The bundled reproduction suite behind `wpi report`: every headline
/// closed-form computation and classification the toolkit certifies, with its
/// tolerance pinned in code.
std::vector<CheckResult> run_reproduction();

}  // namespace wpi
