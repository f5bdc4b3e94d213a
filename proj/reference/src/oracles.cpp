#include "isobar3/reference/oracles.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace isobar3::reference {

std::vector<mpz_class> naive_tau(std::size_t n) {
  // c[j] = coefficient of q^j in prod (1 - q^m)^24, j < n
  std::vector<mpz_class> c(n, 0);
  if (n == 0) return c;
  c[0] = 1;
  for (std::size_t m = 1; m < n; ++m)
    for (int rep = 0; rep < 24; ++rep)
      for (std::size_t j = n - 1; j >= m; --j) c[j] -= c[j - m];
  return c;  // tau(j + 1) = c[j]
}

std::uint64_t divisor_count(std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) count += (d * d == n) ? 1 : 2;
  return count;
}

std::uint64_t triple_divisor_count(std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t a = 1; a <= n; ++a)
    if (n % a == 0) count += divisor_count(n / a);
  return count;
}

double divisor_sum(std::span<const double> values, std::uint64_t n) {
  double s = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    s += values[d - 1];
    if (d * d != n) s += values[n / d - 1];
  }
  return s;
}

Fraction Fraction::make(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num, b = den;
  while (b) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr __int128 lim = INT64_MAX;
  if (num > lim || num < -lim || den > lim) throw std::overflow_error("fraction overflow");
  return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

Fraction Fraction::operator+(const Fraction& o) const {
  return make(__int128(num) * o.den + __int128(o.num) * den, __int128(den) * o.den);
}
Fraction Fraction::operator-(const Fraction& o) const {
  return make(__int128(num) * o.den - __int128(o.num) * den, __int128(den) * o.den);
}
Fraction Fraction::operator*(const Fraction& o) const {
  return make(__int128(num) * o.num, __int128(den) * o.den);
}
Fraction Fraction::operator/(const Fraction& o) const {
  return make(__int128(num) * o.den, __int128(den) * o.num);
}
bool Fraction::operator<(const Fraction& o) const { return __int128(num) * o.den < __int128(o.num) * den; }

std::string Fraction::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

FractionPair a_step(const FractionPair& pr) {
  const Fraction two{2, 1}, one{1, 1};
  const Fraction d = two * pr.p + two;
  return {pr.p / d, (pr.p + pr.q + one) / d};
}

FractionPair b_step(const FractionPair& pr) {
  const Fraction half{1, 2};
  return {pr.q - half, pr.p + half};
}

Fraction theta(const FractionPair& pr) {
  const Fraction num = Fraction{5, 1} + Fraction{5, 1} * pr.p - Fraction{2, 1} * pr.q;
  const Fraction den = Fraction{11, 1} + Fraction{8, 1} * pr.p - Fraction{5, 1} * pr.q;
  return num / den;
}

}  // namespace isobar3::reference
