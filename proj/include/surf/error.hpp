#pragma once

#include <stdexcept>
#include <string>

namespace surf {

enum class ErrorCode {
  usage,                    // malformed call: dimension mismatch, unknown name, bad argument
  singular,                 // linear system has no unique solution
  unsupported_configuration,
  obstruction_not_computable,
  certificate_invalid,
  not_contractible,
  not_descendable,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace surf
