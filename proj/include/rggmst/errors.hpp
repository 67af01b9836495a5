#pragma once

#include <stdexcept>
#include <string>

namespace rggmst {

/// Invalid user-supplied configuration (density, weights, config file).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numeric parameter outside the model's admissible range.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// A geometric construction produced something its invariants forbid.
/// Signals a logic bug or an infeasible tiling plan, never bad luck.
class ConstructionError : public std::logic_error {
 public:
  explicit ConstructionError(const std::string& what) : std::logic_error(what) {}
};

/// Reading or writing an output file failed.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rggmst
