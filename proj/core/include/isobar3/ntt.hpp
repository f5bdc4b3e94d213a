#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace isobar3::ntt {

// Largest supported transform is 2^kMaxLog points.
inline constexpr unsigned kMaxLog = 25;

struct Prime {
  std::uint32_t p;          // c * 2^25 + 1, below 2^31
  std::uint32_t generator;  // primitive root mod p
};

// Every prime of the form c * 2^25 + 1 below 2^31, in descending order.
std::span<const Prime> primes();

// Arithmetic modulo an odd p < 2^31 in Montgomery form with R = 2^32.
class Montgomery {
 public:
  explicit Montgomery(std::uint32_t p);

  std::uint32_t modulus() const noexcept { return p_; }
  std::uint32_t to(std::uint32_t x) const noexcept { return reduce(std::uint64_t(x) * r2_); }
  std::uint32_t from(std::uint32_t x) const noexcept { return reduce(x); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return reduce(std::uint64_t(a) * b);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t pow(std::uint32_t base_mont, std::uint64_t e) const noexcept;
  std::uint32_t one() const noexcept { return one_; }

 private:
  std::uint32_t reduce(std::uint64_t t) const noexcept {
    const std::uint32_t m = static_cast<std::uint32_t>(t) * neg_inv_;
    const std::uint32_t r = static_cast<std::uint32_t>((t + std::uint64_t(m) * p_) >> 32);
    return r >= p_ ? r - p_ : r;
  }

  std::uint32_t p_;
  std::uint32_t neg_inv_;
  std::uint32_t r2_;
  std::uint32_t one_;
};

// Replaces `series` (coefficients already reduced mod prime.p, length `keep`)
// by its square truncated to the first `keep` coefficients.
void square_truncated(std::vector<std::uint32_t>& series, const Prime& prime);

// Plain (a * b) mod p for cross-checks and CRT setup.
inline std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
  return static_cast<std::uint32_t>(std::uint64_t(a) * b % p);
}
std::uint32_t powmod(std::uint32_t a, std::uint64_t e, std::uint32_t p) noexcept;
std::uint32_t invmod(std::uint32_t a, std::uint32_t p) noexcept;

}  // namespace isobar3::ntt
