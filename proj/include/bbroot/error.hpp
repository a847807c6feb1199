#pragma once

#include <stdexcept>
#include <string>

namespace bbroot {

enum class Errc {
  NotPrime,
  EvenCharacteristic,
  ReducibleModulus,
  DivisionByZero,
  FieldMismatch,
  UnsupportedFamily,
  BadSpec,
  DimensionMismatch,
  EmptyGeneratingSet,
  NotAnInvolution,
  Stalled,
  WrongGroupPromise,
  NoCentralInvolution,
  BackendNotWhiteBox,
  ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace bbroot
