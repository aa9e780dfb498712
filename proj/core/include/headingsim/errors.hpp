#pragma once

#include <stdexcept>
#include <string>

namespace hsim {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration or command line usage.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Content of a file or in-memory record violates an invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed file: unparseable line, bad header, wrong field count.
class FormatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Scene or trajectory generation failed (arena exit, yield shortfall).
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Filesystem trouble: unreadable input, unwritable output.
class IoError : public Error {
 public:
  using Error::Error;
};

// Mathematically invalid argument (non-finite angle, coincident poses,
// degenerate box, mismatched batch lengths).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace hsim
