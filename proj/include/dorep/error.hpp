#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace dorep {

enum class ErrorKind {
  Parse,
  UnknownProposition,
  InvalidSignature,
  MenuViolation,
  SeqNotCompilable,
  FRichnessViolation,
  RichnessViolation,
  CapExceeded,
  PreconditionViolation,
  Unsatisfiable,
  NotTotal,
  NotTransitive,
  InvalidModel,
  InvalidPreference,
  Io,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library. `position()` is set for parse errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(what), kind_(kind), position_(position) {}

  ErrorKind kind() const { return kind_; }
  std::optional<std::size_t> position() const { return position_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> position_;
};

}  // namespace dorep
