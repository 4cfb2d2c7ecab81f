#pragma once

#include <stdexcept>
#include <string>

namespace voidroute {

enum class ErrorKind {
  kGeometry,
  kParse,
  kInvalidGraph,
  kRetryExhausted,
  kDisconnected,
  kNotUnitDisk,
  kNotPlanar,
  kNotFound,
  kProtocol,
  kUnroutable,
  kClosureViolation,
  kStepBudgetExceeded,
  kIsolated,
  kUndefined,
  kHeaderCapacity,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace voidroute
