#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace isobar3 {

// Smallest-prime-factor table on [0, limit], built by a linear sieve.
class FactorSieve {
 public:
  explicit FactorSieve(std::uint32_t limit);

  std::uint32_t limit() const noexcept { return limit_; }
  bool is_prime(std::uint32_t n) const noexcept { return n >= 2 && spf_[n] == n; }
  std::uint32_t smallest_factor(std::uint32_t n) const noexcept { return spf_[n]; }
  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

  struct PrimePower {
    std::uint32_t p;
    std::uint32_t e;
    std::uint32_t pe;
  };
  // Factorization of n >= 2 into ascending prime powers.
  std::vector<PrimePower> factor(std::uint32_t n) const;

  // d_j(n): number of ordered factorizations into j factors, j >= 1.
  std::uint64_t divisor_count(std::uint32_t n, unsigned j = 2) const;

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

// d(n) for every n in [0, limit] (entry 0 is 0).
std::vector<std::uint32_t> divisor_counts(std::uint32_t limit);

}  // namespace isobar3
