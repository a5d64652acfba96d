#pragma once

#include <stdexcept>
#include <string>

namespace nomahet {

// Invalid or inconsistent scenario configuration: bad field values, an
// unplaceable topology, an unknown sweep field, or a malformed config
// document.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure while reading or writing result files.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// The outage-derived minimum powers exceed a transmitter budget, so the
// power constraint set for this trial is empty.
class InfeasibleOutageError : public std::runtime_error {
 public:
  explicit InfeasibleOutageError(const std::string& what)
      : std::runtime_error(what) {}
};

// Exhaustive search requested on an instance above the enumeration guard.
class InstanceTooLargeError : public std::runtime_error {
 public:
  explicit InstanceTooLargeError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace nomahet
