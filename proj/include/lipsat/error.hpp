#pragma once

#include <stdexcept>
#include <string>

namespace lipsat {

enum class ErrorKind {
  DimensionMismatch,
  InvalidArgument,
  NotSmooth,
  Parse,
};

/// Exception type thrown by every module of the core library. The C API maps
/// the kind onto its status codes.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace lipsat
