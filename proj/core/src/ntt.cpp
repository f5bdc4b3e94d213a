#include "isobar3/ntt.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace isobar3::ntt {
namespace {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t small : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % small == 0) return n == small;
  }
  // Deterministic for n < 2^32 with bases 2, 7, 61.
  std::uint32_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint32_t a : {2u, 7u, 61u}) {
    std::uint32_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint32_t find_generator(std::uint32_t p) {
  std::uint32_t m = p - 1;
  std::array<std::uint32_t, 16> factors{};
  std::size_t count = 0;
  for (std::uint32_t f = 2; std::uint64_t(f) * f <= m; ++f) {
    if (m % f == 0) {
      factors[count++] = f;
      while (m % f == 0) m /= f;
    }
  }
  if (m > 1) factors[count++] = m;
  for (std::uint32_t g = 2;; ++g) {
    bool ok = true;
    for (std::size_t i = 0; i < count && ok; ++i) ok = powmod(g, (p - 1) / factors[i], p) != 1;
    if (ok) return g;
  }
}

std::vector<Prime> make_primes() {
  std::vector<Prime> out;
  constexpr std::uint64_t step = std::uint64_t(1) << kMaxLog;
  for (std::uint64_t c = (std::uint64_t(1) << 31) / step; c >= 1; --c) {
    const std::uint64_t p = c * step + 1;
    if (p < (std::uint64_t(1) << 31) && is_prime_u32(static_cast<std::uint32_t>(p))) {
      const auto p32 = static_cast<std::uint32_t>(p);
      out.push_back({p32, find_generator(p32)});
    }
  }
  return out;
}

// Forward transform, decimation in frequency: natural order in, bit-reversed out.
void forward(std::span<std::uint32_t> a, std::span<const std::uint32_t> roots, const Montgomery& mg) {
  const std::size_t n = a.size();
  for (std::size_t len = n >> 1, stride = 1; len >= 1; len >>= 1, stride <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * len) {
      std::uint32_t* lo = a.data() + i;
      std::uint32_t* hi = lo + len;
      for (std::size_t j = 0; j < len; ++j) {
        const std::uint32_t u = lo[j];
        const std::uint32_t v = hi[j];
        lo[j] = mg.add(u, v);
        hi[j] = mg.mul(mg.sub(u, v), roots[j * stride]);
      }
    }
  }
}

// Inverse transform, decimation in time: bit-reversed in, natural order out (unscaled).
void inverse(std::span<std::uint32_t> a, std::span<const std::uint32_t> roots, const Montgomery& mg) {
  const std::size_t n = a.size();
  const std::size_t half = n >> 1;
  const std::uint32_t p = mg.modulus();
  for (std::size_t len = 1, stride = half; len < n; len <<= 1, stride >>= 1) {
    for (std::size_t i = 0; i < n; i += 2 * len) {
      std::uint32_t* lo = a.data() + i;
      std::uint32_t* hi = lo + len;
      for (std::size_t j = 0; j < len; ++j) {
        // w^{-j} = -w^{n/2 - j}
        const std::size_t idx = j * stride;
        const std::uint32_t w = idx == 0 ? mg.one() : p - roots[half - idx];
        const std::uint32_t u = lo[j];
        const std::uint32_t v = mg.mul(hi[j], w);
        lo[j] = mg.add(u, v);
        hi[j] = mg.sub(u, v);
      }
    }
  }
}

}  // namespace

std::uint32_t powmod(std::uint32_t a, std::uint64_t e, std::uint32_t p) noexcept {
  std::uint64_t result = 1 % p;
  std::uint64_t base = a % p;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t invmod(std::uint32_t a, std::uint32_t p) noexcept { return powmod(a, p - 2, p); }

std::span<const Prime> primes() {
  static const std::vector<Prime> table = make_primes();
  return table;
}

Montgomery::Montgomery(std::uint32_t p) : p_(p) {
  if ((p & 1) == 0 || p >= (1u << 31)) throw std::invalid_argument("Montgomery: modulus must be odd and < 2^31");
  std::uint32_t inv = 1;
  for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;  // Newton iteration for p^{-1} mod 2^32
  neg_inv_ = 0u - inv;
  const std::uint64_t r = (std::uint64_t(1) << 32) % p;
  r2_ = static_cast<std::uint32_t>(r * r % p);
  one_ = static_cast<std::uint32_t>(r);
}

std::uint32_t Montgomery::pow(std::uint32_t base_mont, std::uint64_t e) const noexcept {
  std::uint32_t result = one_;
  while (e > 0) {
    if (e & 1) result = mul(result, base_mont);
    base_mont = mul(base_mont, base_mont);
    e >>= 1;
  }
  return result;
}

void square_truncated(std::vector<std::uint32_t>& series, const Prime& prime) {
  const std::size_t keep = series.size();
  if (keep == 0) return;
  const std::size_t n = std::bit_ceil(2 * keep - 1);
  if (n > (std::size_t(1) << kMaxLog)) throw std::length_error("ntt: transform length exceeds 2^25");

  const Montgomery mg(prime.p);
  std::vector<std::uint32_t> roots(std::max<std::size_t>(n / 2, 1));
  {
    const std::uint32_t w = mg.to(powmod(prime.generator, (prime.p - 1) / n, prime.p));
    std::uint32_t cur = mg.one();
    for (auto& r : roots) {
      r = cur;
      cur = mg.mul(cur, w);
    }
  }

  std::vector<std::uint32_t> buf(n, 0);
  for (std::size_t i = 0; i < keep; ++i) buf[i] = mg.to(series[i]);
  if (n == 1) {
    buf[0] = mg.mul(buf[0], buf[0]);
  } else {
    forward(buf, roots, mg);
    for (auto& x : buf) x = mg.mul(x, x);
    inverse(buf, roots, mg);
  }
  const std::uint32_t scale = mg.to(invmod(static_cast<std::uint32_t>(n % prime.p), prime.p));
  for (std::size_t i = 0; i < keep; ++i) series[i] = mg.from(mg.mul(buf[i], scale));
}

}  // namespace isobar3::ntt
