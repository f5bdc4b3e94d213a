#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace isobar3::reference {

// Coefficients of q prod_{m>=1} (1 - q^m)^24 for n = 1..N by multiplying in one
// factor (1 - q^m) at a time. O(24 N^2) big-integer operations.
std::vector<mpz_class> naive_tau(std::size_t n);

// Divisor count by trial division.
std::uint64_t divisor_count(std::uint64_t n);
// Ordered triples (a, b, c) with abc = n.
std::uint64_t triple_divisor_count(std::uint64_t n);

// sum_{d | n} values[d - 1] by trial division up to sqrt(n).
double divisor_sum(std::span<const double> values, std::uint64_t n);

// Fixed-width fraction with 128-bit intermediates; throws std::overflow_error.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction make(__int128 num, __int128 den);
  Fraction operator+(const Fraction& o) const;
  Fraction operator-(const Fraction& o) const;
  Fraction operator*(const Fraction& o) const;
  Fraction operator/(const Fraction& o) const;
  bool operator==(const Fraction& o) const = default;
  bool operator<(const Fraction& o) const;
  std::string str() const;
};

struct FractionPair {
  Fraction p, q;
};

FractionPair a_step(const FractionPair& pr);
FractionPair b_step(const FractionPair& pr);
Fraction theta(const FractionPair& pr);

}  // namespace isobar3::reference
