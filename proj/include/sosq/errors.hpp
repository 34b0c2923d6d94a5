#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sosq {

/// Failure kinds raised by the library. Values that are verdicts rather than
/// failures (a matrix that is not positive definite, an invalid certificate)
/// are returned, not thrown.
enum class Errc {
  DivisionByZeroPoly,
  BothZero,
  ZeroPolynomial,
  NotSquarefree,
  ZeroOrConstant,
  BadPrime,
  LiftFailure,
  DegreeTooLarge,
  RootClassificationUnstable,
  IllConditioned,
  NotStrictlyPositive,
  DegreeTooHigh,
  PrecisionExhausted,
  NoInvertibleSquare,
  NotIrreducible,
  NotCoprime,
  HypothesisViolated,
  ZeroG,
  NotNonnegative,
  ParseError,
};

inline constexpr std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case Errc::BothZero: return "BothZero";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::NotSquarefree: return "NotSquarefree";
    case Errc::ZeroOrConstant: return "ZeroOrConstant";
    case Errc::BadPrime: return "BadPrime";
    case Errc::LiftFailure: return "LiftFailure";
    case Errc::DegreeTooLarge: return "DegreeTooLarge";
    case Errc::RootClassificationUnstable: return "RootClassificationUnstable";
    case Errc::IllConditioned: return "IllConditioned";
    case Errc::NotStrictlyPositive: return "NotStrictlyPositive";
    case Errc::DegreeTooHigh: return "DegreeTooHigh";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::NoInvertibleSquare: return "NoInvertibleSquare";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::ZeroG: return "ZeroG";
    case Errc::NotNonnegative: return "NotNonnegative";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Syntax error in a polynomial expression or a certificate document.
/// `position` is a 0-based character offset for expressions; `line` is
/// 1-based for documents (0 when the error is structural, not lexical).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t position, const std::string& message)
      : Error(Errc::ParseError, message), line_(line), position_(position), message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t position_;
  std::string message_;
};

}  // namespace sosq
