#ifndef RESLAT_ERROR_HPP
#define RESLAT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace reslat {

enum class Errc {
  NegativeEntry,
  ZeroColumn,
  UnknownName,
  Degenerate,
  ZeroDiagonal,
  StepTooLarge,
  ParseError,
  ValidationError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NegativeEntry:   return "NEGATIVE_ENTRY";
    case Errc::ZeroColumn:      return "ZERO_COLUMN";
    case Errc::UnknownName:     return "UNKNOWN_NAME";
    case Errc::Degenerate:      return "DEGENERATE";
    case Errc::ZeroDiagonal:    return "ZERO_DIAGONAL";
    case Errc::StepTooLarge:    return "STEP_TOO_LARGE";
    case Errc::ParseError:      return "PARSE_ERROR";
    case Errc::ValidationError: return "VALIDATION_ERROR";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

// Absolute tolerance for strict-inequality classification. Comparisons closer
// than this are ties and surface as DEGENERATE instead of being broken.
inline constexpr double kSignTol = 1e-12;

// Tolerance for simplex membership (coordinate range and unit sum).
inline constexpr double kSimplexTol = 1e-9;

// Sign of x, with |x| < kSignTol mapped to 0 (a tie).
inline int tie_sign(double x) {
  if (x > kSignTol) return 1;
  if (x < -kSignTol) return -1;
  return 0;
}

// Sign of x; throws DEGENERATE on a tie.
inline int strict_sign(double x, const char* what) {
  int s = tie_sign(x);
  if (s == 0) fail(Errc::Degenerate, std::string("tie in ") + what);
  return s;
}

}  // namespace reslat

#endif
