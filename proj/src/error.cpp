#include "harsanyi/error.hpp"

namespace harsanyi {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::BadLength: return "BadLength";
    case ErrorKind::MissingMask: return "MissingMask";
    case ErrorKind::DuplicateMask: return "DuplicateMask";
    case ErrorKind::MaskOutOfRange: return "MaskOutOfRange";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyPlantedMask: return "EmptyPlantedMask";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DuplicateIndex: return "DuplicateIndex";
    case ErrorKind::EmptyCoalition: return "EmptyCoalition";
    case ErrorKind::VariableNotInCoalition: return "VariableNotInCoalition";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Diverged: return "Diverged";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind) {}

}  // namespace harsanyi
