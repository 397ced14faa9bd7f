#include "wuq/scalar.hpp"

#include <cctype>

#include "wuq/error.hpp"

namespace wuq {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SupportOverflow: return "SupportOverflow";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::QuotientUnavailable: return "QuotientUnavailable";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NonPolyhedral: return "NonPolyhedral";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::SignCapExceeded: return "SignCapExceeded";
    case ErrorCode::TailDescriptorMissing: return "TailDescriptorMissing";
    case ErrorCode::NotInRange: return "NotInRange";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::SceneIncomplete: return "SceneIncomplete";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::PlanIncompatible: return "PlanIncompatible";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::TooFewIndices: return "TooFewIndices";
    case ErrorCode::EmptyF: return "EmptyF";
    case ErrorCode::SubsetCapExceeded: return "SubsetCapExceeded";
    case ErrorCode::InsufficientVectors: return "InsufficientVectors";
    case ErrorCode::TraceIncomplete: return "TraceIncomplete";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string body(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(body, 10);
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (!is_integer_text(num_text))
    throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
  if (slash == std::string_view::npos) return Scalar(parse_integer(num_text));
  const auto den_text = text.substr(slash + 1);
  if (!is_integer_text(den_text) || den_text[0] == '-' || den_text[0] == '+')
    throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
  mpz_class den = parse_integer(den_text);
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  Scalar q(parse_integer(num_text), den);
  q.canonicalize();
  return q;
}

std::string format_scalar(const Scalar& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Scalar pow(const Scalar& base, unsigned exponent) {
  Scalar result = 1;
  Scalar b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

Scalar factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Scalar(f);
}

}  // namespace wuq
