#include "isobar3/rational.hpp"

#include <string>

#include "isobar3/error.hpp"

namespace isobar3::expo {

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(Errc::degenerate_denominator, "exponent_calculus", "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  auto digits_ok = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num) || !digits_ok(den) || den[0] == '-' || den[0] == '+')
    throw Error(Errc::invalid_argument, "exponent_calculus", "not a rational: '" + s + "'");
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10), d(den, 10);
  if (d == 0) throw Error(Errc::degenerate_denominator, "exponent_calculus", "zero denominator in '" + s + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(Errc::degenerate_denominator, "exponent_calculus", "division by zero");
  v_ /= o.v_;
  return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace isobar3::expo
