#pragma once

#include <stdexcept>
#include <string>

namespace qdp4 {

enum class ErrorCode {
  Arithmetic,           // division by zero
  DescriptorMismatch,   // operands over different fields
  DegenerateInput,      // zero polynomial, zero argument where nonzero required
  UnsupportedField,     // operation not available over this field
  DegeneratePencil,     // A and B proportional
  NotSmooth,
  UnsupportedSplitting, // quintic does not split over the rationals
  InvalidNormalForm,
  ResourceLimit,
  InvalidGroup,
  FiberMismatch,
  InvalidClass,
  InvalidRoot,
  InvalidAut,
  DegenerateForm,
  InvalidSplitting,
  InvalidInput,
  Parse,
  Internal,             // broken internal consistency check
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qdp4
