#include "cppforge/error.hpp"

#include <sstream>

namespace cppforge {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NonDivisorSubdegree: return "NonDivisorSubdegree";
    case ErrorCode::FactorizationTimeout: return "FactorizationTimeout";
    case ErrorCode::NoCubeRoot: return "NoCubeRoot";
    case ErrorCode::NoCubeClassification: return "NoCubeClassification";
    case ErrorCode::SubfieldViolation: return "SubfieldViolation";
    case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::NonMonomial: return "NonMonomial";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::EvenExtension: return "EvenExtension";
    case ErrorCode::BrokenDivisorChain: return "BrokenDivisorChain";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::ZeroU: return "ZeroU";
    case ErrorCode::NotBijective: return "NotBijective";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

namespace {

std::string collision_message(std::uint64_t x1, std::uint64_t x2, std::uint64_t image) {
  std::ostringstream os;
  os << std::hex << "inputs " << x1 << " and " << x2 << " both map to " << image;
  return os.str();
}

}  // namespace

NotBijectiveError::NotBijectiveError(std::uint64_t x1, std::uint64_t x2, std::uint64_t image)
    : Error(ErrorCode::NotBijective, collision_message(x1, x2, image)), x1_(x1), x2_(x2), image_(image) {}

}  // namespace cppforge
