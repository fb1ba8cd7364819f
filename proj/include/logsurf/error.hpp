#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace logsurf {

enum class Errc {
  SingularMatrix,
  NotSymmetric,
  UnknownId,
  UnknownTarget,
  BadCoefficient,
  InvalidState,
  NotNested,
  NotLogTerminal,
  NotFlopping,
  NotABlowdown,
  NotNef,
  NotCrepant,
  StuckInPhase2,
  TheoremViolation,
  NoAdmissibleTarget,
  Parse,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (tests, the command line front end) can branch on the kind.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace logsurf
