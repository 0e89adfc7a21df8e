#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cppforge {

enum class ErrorCode {
  ReducibleModulus,
  DegreeOutOfRange,
  DivisionByZero,
  FieldMismatch,
  NonDivisorSubdegree,
  FactorizationTimeout,
  NoCubeRoot,
  NoCubeClassification,
  SubfieldViolation,
  ZeroCoefficient,
  ZeroScale,
  NonMonomial,
  PreconditionViolated,
  EvenExtension,
  BrokenDivisorChain,
  SearchSpaceTooLarge,
  NotCoprime,
  ZeroU,
  NotBijective,
  FieldTooLarge,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every library failure is reported through this type; `code()` is stable,
/// `what()` names the violated clause.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when a map that must be a bijection sends two inputs to one image.
class NotBijectiveError : public Error {
 public:
  NotBijectiveError(std::uint64_t x1, std::uint64_t x2, std::uint64_t image);

  std::uint64_t first() const noexcept { return x1_; }
  std::uint64_t second() const noexcept { return x2_; }
  std::uint64_t image() const noexcept { return image_; }

 private:
  std::uint64_t x1_;
  std::uint64_t x2_;
  std::uint64_t image_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

inline void require(bool condition, ErrorCode code, const std::string& detail) {
  if (!condition) fail(code, detail);
}

}  // namespace cppforge
