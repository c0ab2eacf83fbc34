#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace harsanyi {

enum class ErrorKind {
  CapExceeded,
  BadLength,
  MissingMask,
  DuplicateMask,
  MaskOutOfRange,
  NonFinite,
  ParseError,
  EmptyPlantedMask,
  IndexOutOfRange,
  DuplicateIndex,
  EmptyCoalition,
  VariableNotInCoalition,
  InvalidConfig,
  Diverged,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace harsanyi
