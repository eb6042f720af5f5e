#pragma once

// The command-line front end as a library, so tests drive it in-process.
// Reports carry no timing and no addresses: identical inputs give identical
// bytes.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uniloc/calc.hpp"
#include "uniloc/frame.hpp"

namespace uniloc {

/// Bad flags, unknown law names, missing verb inputs.  Exit status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Verdict {
  std::string name;
  bool ok = false;
  std::string detail;  // the counterexample when !ok
};

struct RunReport {
  std::string command;
  std::vector<std::string> info;
  std::vector<Verdict> verdicts;
  /// The transformed structure, presentation, map or value.
  std::string artifact;
  /// Where the artifact was written instead of being printed.
  std::optional<std::string> dump_path;

  /// 0 iff every verdict passed, else 1.
  int exit_status() const;
  std::string render() const;
};

/// Law suites selectable with --laws.
const std::vector<std::string>& known_laws();
/// Splits "a,b" and rejects unknown names; "all" selects every suite.
std::vector<std::string> parse_laws(const std::vector<std::string>& items);

RunReport cmd_check(const std::string& file, const std::vector<std::string>& laws);

enum class Verb { convert, reflect, complete, cauchy, lift };

struct TransformInputs {
  std::string file;
  std::string target_file;  // lift
  std::string map_file;     // lift: `y -> expr` per irreducible of the target
  bool plain = false;       // cauchy: the non-regular locale
};

RunReport cmd_transform(Verb verb, const TransformInputs& in);

RunReport cmd_calc(const std::string& expression, const CalcSettings& settings);

/// Parses argv (without the program name), runs, prints, and returns the
/// exit status: 0 pass, 1 check failure, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uniloc
