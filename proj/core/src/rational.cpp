#include "fairdiv/rational.hpp"

#include <cctype>
#include <ostream>

#include "fairdiv/errors.hpp"

namespace fairdiv {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  // cpp_rational reduces but expects a positive denominator.
  if (den < 0)
    v_ = boost::multiprecision::cpp_rational(-num, -den);
  else
    v_ = boost::multiprecision::cpp_rational(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw UsageError("division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  std::string s = text;
  // trim surrounding whitespace
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw ParseError("empty rational literal");
  s = s.substr(b, e - b + 1);

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  auto bad = [&]() -> ParseError {
    return ParseError("malformed rational literal \"" + text + "\"");
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) throw bad();
    BigInt num(p), den(q);
    if (den == 0) throw ParseError("zero denominator in \"" + text + "\"");
    return Rational(negative ? BigInt(-num) : num, den);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (fp.empty()) fp = "0";
    if (!all_digits(ip) || !all_digits(fp)) throw bad();
    BigInt scale = 1;
    for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
    BigInt num = BigInt(ip) * scale + BigInt(fp);
    return Rational(negative ? BigInt(-num) : num, scale);
  }
  if (!all_digits(s)) throw bad();
  BigInt num(s);
  return Rational(negative ? BigInt(-num) : num, BigInt(1));
}

std::string Rational::str() const {
  std::string out = numerator().str();
  if (!is_integer()) out += "/" + denominator().str();
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace fairdiv
