#include "adk/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace adk {

namespace {

bool looks_like_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational rational_from_string(const std::string& text) {
  const auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!looks_like_integer(num) || !looks_like_integer(den)) {
    throw std::invalid_argument("bad rational: '" + text + "'");
  }
  const mpz_class denominator(den);
  if (denominator == 0) {
    throw std::invalid_argument("zero denominator: '" + text + "'");
  }
  Rational value{mpz_class(num), denominator};
  value.canonicalize();
  return value;
}

std::string rational_to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

}  // namespace adk
