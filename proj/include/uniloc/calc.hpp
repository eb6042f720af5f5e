#pragma once

// The calculator: ring expressions over rational literals evaluated either
// as a bracketing interval of the real value or as a p-adic ball.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | '(' expr ')' | literal
//   input  := expr directive*,  directive := '@eps' rational | '@padic' p k

#include <optional>
#include <string>
#include <string_view>

#include "uniloc/numberline.hpp"

namespace uniloc {

/// A syntax or precondition error; `column` is 1-based.
class CalcError : public Error {
 public:
  CalcError(std::size_t column, const std::string& message);
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

struct PAdicMode {
  unsigned long prime;
  long precision;
};

struct CalcSettings {
  std::optional<Rational> eps;  // default 1/1000000
  std::optional<PAdicMode> padic;
};

struct CalcOutcome {
  std::optional<RationalInterval> interval;
  std::optional<PAdicBall> ball;
  Rational eps;
  /// "(lo, hi)" or "c + O(p^k)".
  std::string text;
};

/// Directives in the input override `settings`.
CalcOutcome evaluate_calc(std::string_view input, const CalcSettings& settings = {});

}  // namespace uniloc
