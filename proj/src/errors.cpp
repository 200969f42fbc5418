#include "frictionlab/errors.hpp"

namespace frictionlab {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out = "invalid configuration (" + std::to_string(issues.size()) +
                    (issues.size() == 1 ? " issue)" : " issues)");
  for (const auto& issue : issues) out += "\n  - " + issue;
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

}  // namespace frictionlab
