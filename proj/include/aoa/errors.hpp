#pragma once

#include <stdexcept>
#include <string>

namespace aoa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario fields violate a model invariant (M > N, unsorted positions, ...).
class InvalidScenario : public Error {
 public:
  using Error::Error;
};

class DuplicateAngles : public Error {
 public:
  using Error::Error;
};

// Gram matrix D^H D is singular or its condition estimate exceeds 1e12.
class SingularGram : public Error {
 public:
  using Error::Error;
};

class ResampleExhausted : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace aoa
