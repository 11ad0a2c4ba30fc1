#pragma once

#include <stdexcept>
#include <string>

namespace vcseffort {

// Exit-code classes used by the CLI: I/O and parse failures map to 1,
// semantic and configuration failures map to 2.
enum class ErrorKind { Io = 1, Semantic = 2 };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// Unreadable input or too many malformed records.
class IngestError : public Error {
public:
  explicit IngestError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

/// Inconsistent configuration (alias conflicts, bad patterns, bad flags).
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Semantic, what) {}
};

/// A numeric parameter outside its domain (theta < 1, empty sample, ...).
class ParameterError : public Error {
public:
  explicit ParameterError(const std::string& what) : Error(ErrorKind::Semantic, what) {}
};

class CalibrationError : public Error {
public:
  explicit CalibrationError(const std::string& what) : Error(ErrorKind::Semantic, what) {}
};

} // namespace vcseffort
