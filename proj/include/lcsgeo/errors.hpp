#ifndef LCSGEO_ERRORS_HPP
#define LCSGEO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lcsgeo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed arguments outside an operation's domain.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed distribution, property spec or experiment config.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A size cap was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lcsgeo

#endif  // LCSGEO_ERRORS_HPP
