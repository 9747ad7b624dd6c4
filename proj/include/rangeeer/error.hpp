#pragma once

#include <stdexcept>
#include <string>

namespace rangeeer {

enum class ErrorKind {
  EmptyClass,       // one of bona fide / spoof has no data
  LengthMismatch,   // labels and scores differ in length
  EmptyInput,
  DomainError,
  NonIntegerRatio,  // resolutions are not integer multiples
  InvalidSpec,
  InvalidTrial,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rangeeer
