#include "gkz/exact.hpp"

#include "gkz/errors.hpp"

#include <cctype>

namespace gkz {

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw Error(ErrorCode::InvalidInput, "empty rational");
  const auto bad = [&] { return Error(ErrorCode::InvalidInput, "not a rational: '" + s + "'"); };

  auto parseInt = [&](const std::string& t) {
    std::size_t i = (t.size() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) throw bad();
    for (std::size_t k = i; k < t.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(t[k]))) throw bad();
    return Integer(t[0] == '+' ? t.substr(1) : t);
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer num = parseInt(s.substr(0, slash));
    Integer den = parseInt(s.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(num) / Rational(den);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), fracPart = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    if (fracPart.empty()) fracPart = "0";
    Integer w = parseInt(whole);
    Integer f = parseInt(fracPart);
    if (fracPart[0] == '-' || fracPart[0] == '+') throw bad();
    Integer scale = mp::pow(Integer(10), static_cast<unsigned>(fracPart.size()));
    Rational r = Rational(w) + Rational(f) / Rational(scale);
    return neg ? -r : r;
  }
  return Rational(parseInt(s));
}

std::string to_string(const Rational& x) { return x.str(); }
std::string to_string(const Integer& x) { return x.str(); }

Integer floor(const Rational& x) {
  Integer num = mp::numerator(x), den = mp::denominator(x);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Rational frac(const Rational& x) { return x - Rational(floor(x)); }

bool is_integral(const Rational& x) { return mp::denominator(x) == 1; }

double to_double(const Rational& x) { return x.convert_to<double>(); }
double to_double(const Integer& x) { return x.convert_to<double>(); }

IntVector primitive(const RatVector& v) {
  Integer l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) l = mp::lcm(l, Integer(mp::denominator(v(i))));
  IntVector out(v.size());
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Rational scaled = v(i) * Rational(l);
    out(i) = mp::numerator(scaled);
    g = mp::gcd(g, out(i));
  }
  if (g > 1)
    for (Eigen::Index i = 0; i < v.size(); ++i) out(i) /= g;
  return out;
}

}  // namespace gkz
