#pragma once

#include <stdexcept>
#include <string>

namespace aebench {

// Base class for all toolkit errors. CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside its documented domain (negative exposure, DN > 4095, ...).
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Calibration input cannot support CRF estimation.
class CalibrationError : public Error {
public:
  explicit CalibrationError(const std::string& msg) : Error(msg) {}
};

// Two-view geometry failure (too few correspondences, degenerate config).
class GeometryError : public Error {
public:
  explicit GeometryError(const std::string& msg) : Error(msg) {}
};

// File I/O and format validation failures. Message names the offending path.
class IoError : public Error {
public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace aebench
