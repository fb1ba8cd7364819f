#include "logsurf/rational.hpp"

#include "logsurf/error.hpp"

#include <cctype>

namespace logsurf {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::UnknownId: return "UnknownId";
    case Errc::UnknownTarget: return "UnknownTarget";
    case Errc::BadCoefficient: return "BadCoefficient";
    case Errc::InvalidState: return "InvalidState";
    case Errc::NotNested: return "NotNested";
    case Errc::NotLogTerminal: return "NotLogTerminal";
    case Errc::NotFlopping: return "NotFlopping";
    case Errc::NotABlowdown: return "NotABlowdown";
    case Errc::NotNef: return "NotNef";
    case Errc::NotCrepant: return "NotCrepant";
    case Errc::StuckInPhase2: return "StuckInPhase2";
    case Errc::TheoremViolation: return "TheoremViolation";
    case Errc::NoAdmissibleTarget: return "NoAdmissibleTarget";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw Error(Errc::Parse, "not an exact fraction: '" + std::string(text) + "'");
  const BigInt p{std::string(num)};
  const BigInt q{std::string(den)};
  if (q == 0) throw Error(Errc::Parse, "zero denominator in '" + std::string(text) + "'");
  Rat r(p, q);
  return negative ? Rat(-r) : r;
}

std::string to_fraction_string(const Rat& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

std::string to_display_string(const Rat& r) {
  return is_integer(r) ? boost::multiprecision::numerator(r).str() : to_fraction_string(r);
}

}  // namespace logsurf
