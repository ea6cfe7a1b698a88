#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qeof {

enum class ErrorKind {
  invalid_input,
  dimension,
  normalization,
  degenerate_state,
  invalid_spectrum,
  invalid_unitary,
  degenerate_block,
  invalid_basis,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::normalization: return "normalization";
    case ErrorKind::degenerate_state: return "degenerate-state";
    case ErrorKind::invalid_spectrum: return "invalid-spectrum";
    case ErrorKind::invalid_unitary: return "invalid-unitary";
    case ErrorKind::degenerate_block: return "degenerate-block";
    case ErrorKind::invalid_basis: return "invalid-basis";
  }
  return "unknown";
}

/// Every validation failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qeof
