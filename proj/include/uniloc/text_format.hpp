#pragma once

// The line-oriented file format shared by the command-line tool.
//
//   # comment
//   frame NAME
//   elem a b c            irreducibles
//   le a c                a ≤ c
//   cover U: a, b + c     a base cover, listed by elements
//   entourage E: a (+) a | b (+) b + c
//
// Element expressions are 0, 1, or irreducible names joined by '+'.  An
// entourage is a join of rectangles x (+) y (or x ⊕ y) separated by '|'.
// Map files hold one line `y -> expr` per irreducible of the codomain.

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uniloc/hom.hpp"
#include "uniloc/uniformity.hpp"

namespace uniloc {

/// "file:line:col: message".
class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A parsed but not yet validated locale.  Base members keep file order.
struct ParsedLocale {
  std::string file;
  FiniteFrame frame;
  std::vector<std::pair<std::string, CoverDownset>> covers;
  std::shared_ptr<const ProductFrame> square;  // set when entourages are present
  std::vector<std::pair<std::string, Element>> entourages;
};

ParsedLocale parse_locale(std::string_view text, const std::string& file = "<input>");
/// Reads and parses; an unreadable file is a ParseError at 0:0.
ParsedLocale read_locale(const std::string& path);

/// Validates and assembles; throws InvalidUniformity.
PreUniformLocale build_locale(const ParsedLocale& parsed);

/// Frame map O Y → O X read from `y -> expr` lines.
FrameHom parse_map(std::string_view text, const std::string& file, const FiniteFrame& y, const FiniteFrame& x);
FrameHom read_map(const std::string& path, const FiniteFrame& y, const FiniteFrame& x);

/// Names usable in the file format; others become j0, j1, ... with the
/// original kept in a comment.
std::vector<std::string> file_names(const FiniteFrame& frame);

enum class DumpForm { covers, entourages, both };

/// Writes `x` back in the file format.  `names` overrides irreducible names;
/// without it, renamed irreducibles are listed in comments.
std::string dump_locale(const PreUniformLocale& x, const std::string& name, DumpForm form,
                        const std::vector<std::string>& names = {});

/// An element as 0, 1 or names joined by " + ".
std::string format_element(const FiniteFrame& frame, const Element& a, const std::vector<std::string>& names);
/// A relation as rectangles "x (+) y" joined by " | ".
std::string format_relation(const ProductFrame& square, const Element& e, const std::vector<std::string>& names);

}  // namespace uniloc
