#pragma once

#include <stdexcept>
#include <string>

namespace layerwave {

// All library errors derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class UnsupportedMedium : public Error {
 public:
  using Error::Error;
};

// A coefficient was requested from a fast-variable table that was not
// computed deep enough. The message names the missing function.
class MissingFastVariable : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class SolverInstability : public Error {
 public:
  using Error::Error;
};

}  // namespace layerwave
