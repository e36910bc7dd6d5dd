#include "ambtrac/rational.hpp"

#include <stdexcept>

namespace ambtrac {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rational rat_frac(long num, long den) {
  if (den == 0) throw std::invalid_argument("rat_frac: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rat_parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(text)) {
      throw std::invalid_argument("rat_parse: not a rational: '" + text + "'");
    }
    return Rational(mpz_class(text, 10));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den) || den[0] == '-') {
    throw std::invalid_argument("rat_parse: not a rational: '" + text + "'");
  }
  mpz_class d(den, 10);
  if (d == 0) {
    throw std::invalid_argument("rat_parse: zero denominator: '" + text + "'");
  }
  Rational q(mpz_class(num, 10), d);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rational& value) { return value.get_str(); }

}  // namespace ambtrac
