#pragma once

#include <stdexcept>
#include <string>

namespace vlc {

/// Argument outside the mathematical or physical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// An OPPM code whose weight is 0 or n: the LED is fully off or fully on
/// and no symbol can carry information.
class NoDataError : public DomainError {
 public:
  explicit NoDataError(const std::string& what) : DomainError(what) {}
};

/// Scenario or configuration file could not be read or parsed.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vlc
