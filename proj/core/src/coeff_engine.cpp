#include "isobar3/coeff_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "isobar3/arith.hpp"
#include "isobar3/error.hpp"
#include "isobar3/ntt.hpp"
#include "isobar3/parallel.hpp"

namespace isobar3::coeff {
namespace {

constexpr const char* kModule = "coeff_engine";

std::uint64_t triangular(std::uint64_t j) { return j * (j + 1) / 2; }

// Smallest j with j(j+1)/2 >= x.
std::uint64_t first_triangular_at_least(std::uint64_t x) {
  auto j = static_cast<std::uint64_t>((std::sqrt(8.0 * double(x) + 1.0) - 1.0) / 2.0);
  while (j > 0 && triangular(j - 1) >= x) --j;
  while (triangular(j) < x) ++j;
  return j;
}

std::int64_t jacobi_coefficient(std::uint64_t j) {
  const auto c = static_cast<std::int64_t>(2 * j + 1);
  return (j & 1) ? -c : c;
}

// Coefficients [lo, hi) of (prod (1 - q^m)^3)^2, by pairing the sparse terms.
void sparse_square_segment(std::size_t lo, std::size_t hi, std::span<std::int64_t> out) {
  std::fill(out.begin(), out.end(), 0);
  for (std::uint64_t i = 0; triangular(i) < hi; ++i) {
    const std::uint64_t ti = triangular(i);
    const std::int64_t ci = jacobi_coefficient(i);
    std::uint64_t j = ti >= lo ? 0 : first_triangular_at_least(lo - ti);
    for (; ti + triangular(j) < hi; ++j) out[ti + triangular(j) - lo] += ci * jacobi_coefficient(j);
  }
}

mpz_class tau_bound(std::size_t n, int weight) {
  // |a(m)| <= d(m) m^{(k-1)/2} <= 2 m^{k/2} for m <= n (Deligne, d(m) <= 2 sqrt m).
  mpz_class b;
  mpz_ui_pow_ui(b.get_mpz_t(), n, static_cast<unsigned long>(weight / 2));
  return 2 * b;
}

mpz_class pow_ui(std::uint64_t base, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

}  // namespace

void CuspFormSpec::validate() const {
  if (weight < 12 || weight % 2 != 0)
    throw Error(Errc::invalid_argument, kModule, "weight must be even and >= 12, got " + std::to_string(weight));
  if (level != 1) throw Error(Errc::invalid_argument, kModule, "only level 1 is supported");
}

CrtBasis CrtBasis::covering(const mpz_class& bound) {
  const mpz_class need = 2 * abs(bound) + 1;
  CrtBasis b;
  b.product_ = 1;
  for (const auto& pr : ntt::primes()) {
    if (b.product_ > need) break;
    b.primes_.push_back(pr.p);
    b.product_ *= pr.p;
  }
  if (b.product_ <= need)
    throw Error(Errc::capacity_exceeded, kModule, "coefficients too large for the available CRT moduli");
  const std::size_t k = b.primes_.size();
  b.inverses_.assign(k * k, 0);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = j + 1; i < k; ++i)
      b.inverses_[j * k + i] = ntt::invmod(b.primes_[j] % b.primes_[i], b.primes_[i]);
  b.half_ = b.product_ / 2;
  return b;
}

std::uint32_t CrtBasis::reduce(const mpz_class& value, std::size_t i) const {
  return static_cast<std::uint32_t>(mpz_fdiv_ui(value.get_mpz_t(), primes_[i]));
}

void CrtBasis::reconstruct(std::span<const std::uint32_t> residues, mpz_class& out) const {
  const std::size_t k = primes_.size();
  std::uint32_t digits[16];
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint32_t p = primes_[i];
    std::uint32_t v = residues[i];
    for (std::size_t j = 0; j < i; ++j) {
      const std::uint32_t d = digits[j] % p;
      v = ntt::mulmod(v >= d ? v - d : v + p - d, inverses_[j * k + i], p);
    }
    digits[i] = v;
  }
  out = digits[k - 1];
  for (std::size_t i = k - 1; i-- > 0;) {
    mpz_mul_ui(out.get_mpz_t(), out.get_mpz_t(), primes_[i]);
    mpz_add_ui(out.get_mpz_t(), out.get_mpz_t(), digits[i]);
  }
  if (out > half_) out -= product_;
}

TauTable TauTable::from_integers(const CuspFormSpec& spec, std::span<const mpz_class> values) {
  spec.validate();
  if (values.empty()) throw Error(Errc::invalid_argument, kModule, "empty coefficient list");
  mpz_class bound = 0;
  for (const auto& v : values)
    if (abs(v) > bound) bound = abs(v);
  auto data = std::make_shared<TauTable::Data>(TauTable::Data{CrtBasis::covering(bound), {}});
  const std::size_t k = data->basis.size();
  data->residues.resize(values.size() * k);
  for (std::size_t n = 0; n < values.size(); ++n)
    for (std::size_t i = 0; i < k; ++i) data->residues[n * k + i] = data->basis.reduce(values[n], i);
  return TauTable(spec, values.size(), std::move(data));
}

mpz_class TauTable::at(std::size_t n) const {
  if (n < 1 || n > n_) throw Error(Errc::invalid_argument, kModule, "index out of range");
  const std::size_t k = data_->basis.size();
  mpz_class out;
  data_->basis.reconstruct(std::span(data_->residues).subspan((n - 1) * k, k), out);
  return out;
}

void TauTable::segment(std::size_t first, std::size_t last, std::vector<mpz_class>& out) const {
  if (first < 1 || last > n_ || first > last) throw Error(Errc::invalid_argument, kModule, "segment out of range");
  const std::size_t k = data_->basis.size();
  out.resize(last - first + 1);
  for (std::size_t n = first; n <= last; ++n)
    data_->basis.reconstruct(std::span(data_->residues).subspan((n - 1) * k, k), out[n - first]);
}

LambdaTable::LambdaTable(int weight, std::vector<double> values)
    : weight_(weight), v_(std::make_shared<const std::vector<double>>(std::move(values))) {}

std::vector<std::int64_t> jacobi_cube(std::size_t terms) {
  std::vector<std::int64_t> out(terms, 0);
  for (std::uint64_t j = 0; triangular(j) < terms; ++j) out[triangular(j)] = jacobi_coefficient(j);
  return out;
}

TauTable build_tau_table(std::size_t n, const CuspFormSpec& spec, const BuildOptions& options) {
  spec.validate();
  if (n < 1) throw Error(Errc::invalid_argument, kModule, "N must be >= 1");
  if (n > options.cap)
    throw Error(Errc::capacity_exceeded, kModule,
                "N=" + std::to_string(n) + " exceeds the configured cap " + std::to_string(options.cap));
  if (!spec.is_delta())
    throw Error(Errc::unsupported_form, kModule,
                "only Delta is computed natively; supply a coefficient file for '" + spec.label + "'");
  if (2 * n - 1 > (std::size_t(1) << ntt::kMaxLog))
    throw Error(Errc::capacity_exceeded, kModule, "N exceeds the transform length limit 2^24");

  const std::size_t segment = std::max<std::size_t>(options.segment, 1);
  const std::size_t segments = (n + segment - 1) / segment;

  // (prod (1-q^m)^3)^2 exactly, indices 0..n-1.
  std::vector<std::int64_t> square(n);
  parallel_for(segments, options.threads, [&](std::size_t s) {
    const std::size_t lo = s * segment;
    const std::size_t hi = std::min(n, lo + segment);
    sparse_square_segment(lo, hi, std::span(square).subspan(lo, hi - lo));
  });

  auto data = std::make_shared<TauTable::Data>(TauTable::Data{CrtBasis::covering(tau_bound(n, spec.weight)), {}});
  const std::size_t k = data->basis.size();
  data->residues.resize(n * k);

  // Two more squarings modulo each prime give (prod (1-q^m)^3)^8; a(m) sits at index m-1.
  parallel_for(k, options.threads, [&](std::size_t i) {
    const auto& prime = ntt::primes()[i];
    std::vector<std::uint32_t> series(n);
    const auto p = static_cast<std::int64_t>(prime.p);
    for (std::size_t m = 0; m < n; ++m) series[m] = static_cast<std::uint32_t>(((square[m] % p) + p) % p);
    ntt::square_truncated(series, prime);
    ntt::square_truncated(series, prime);
    for (std::size_t m = 0; m < n; ++m) data->residues[m * k + i] = series[m];
  });

  return TauTable(spec, n, std::move(data));
}

double normalized_value(const mpz_class& a, std::uint64_t n, int weight) {
  const int sign = sgn(a);
  if (sign == 0) return 0.0;
  // Top 64 bits of |a| as a long double mantissa.
  mpz_class mag = abs(a);
  const std::size_t bits = mpz_sizeinbase(mag.get_mpz_t(), 2);
  long double num;
  if (bits <= 64) {
    num = static_cast<long double>(mpz_get_ui(mag.get_mpz_t()));
  } else {
    mpz_tdiv_q_2exp(mag.get_mpz_t(), mag.get_mpz_t(), bits - 64);
    num = std::ldexp(static_cast<long double>(mpz_get_ui(mag.get_mpz_t())), static_cast<int>(bits - 64));
  }
  // n^{(k-1)/2} = n^{(k-2)/2} sqrt(n) for even k.
  const auto nl = static_cast<long double>(n);
  long double den = std::sqrt(nl);
  for (int i = 0; i < (weight - 2) / 2; ++i) den *= nl;
  return static_cast<double>(sign * (num / den));
}

LambdaTable normalize(const TauTable& tau, const CuspFormSpec& spec, const BuildOptions& options) {
  if (spec.weight != tau.weight() || spec.level != tau.spec().level)
    throw Error(Errc::invalid_argument, kModule, "coefficient table was built for a different form");
  const std::size_t n = tau.size();
  const std::size_t segment = std::max<std::size_t>(options.segment, 1);
  const std::size_t segments = (n + segment - 1) / segment;
  std::vector<double> values(n);
  parallel_for(segments, options.threads, [&](std::size_t s) {
    const std::size_t first = s * segment + 1;
    const std::size_t last = std::min(n, first + segment - 1);
    std::vector<mpz_class> exact;
    tau.segment(first, last, exact);
    for (std::size_t m = first; m <= last; ++m) values[m - 1] = normalized_value(exact[m - first], m, spec.weight);
  });
  return LambdaTable(spec.weight, std::move(values));
}

HeckeReport hecke_selfcheck(const LambdaTable& table, std::size_t pairs, std::uint64_t seed, double tolerance) {
  const std::size_t n = table.size();
  HeckeReport report;
  auto fail = [](std::size_t at, const std::string& what) {
    throw Error(Errc::self_check_failed, kModule, what + " fails at n=" + std::to_string(at));
  };
  if (std::abs(table[1] - 1.0) > tolerance) fail(1, "lambda(1) = 1");

  const FactorSieve sieve(static_cast<std::uint32_t>(n));
  for (std::uint32_t p : sieve.primes()) {
    ++report.deligne_checked;
    report.max_prime_abs = std::max(report.max_prime_abs, std::abs(table[p]));
    if (std::abs(table[p]) > 2.0) fail(p, "Deligne bound |lambda(p)| <= 2");
    const std::uint64_t p2 = std::uint64_t(p) * p;
    if (p2 > n) continue;
    const double dev = std::abs(table[p2] - (table[p] * table[p] - 1.0));
    report.max_prime_square_deviation = std::max(report.max_prime_square_deviation, dev);
    ++report.prime_squares_checked;
    if (dev > tolerance) fail(p2, "lambda(p^2) = lambda(p)^2 - 1");
  }
  for (std::uint32_t m = 1; m <= n; ++m) {
    const double ratio = std::abs(table[m]) / double(sieve.divisor_count(m));
    report.max_divisor_ratio = std::max(report.max_divisor_ratio, ratio);
    if (ratio > 1.0) fail(m, "|lambda(n)| <= d(n)");
  }

  if (n >= 6) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> first(2, n / 3);
    while (report.coprime_pairs_checked < pairs) {
      const std::uint64_t a = first(rng);
      std::uniform_int_distribution<std::uint64_t> second(2, std::max<std::uint64_t>(2, n / a));
      const std::uint64_t b = second(rng);
      if (a * b > n || std::gcd(a, b) != 1) continue;
      const double dev = std::abs(table[a * b] - table[a] * table[b]);
      report.max_multiplicative_deviation = std::max(report.max_multiplicative_deviation, dev);
      ++report.coprime_pairs_checked;
      if (dev > tolerance) fail(a * b, "lambda(mn) = lambda(m) lambda(n)");
    }
  }
  return report;
}

ExactAuditReport exact_audit(const TauTable& tau, std::size_t limit) {
  limit = std::min(limit, tau.size());
  ExactAuditReport report;
  report.limit = limit;
  if (limit == 0) return report;
  auto violation = [&](std::size_t n) {
    if (report.violations.size() < 16) report.violations.push_back(n);
    ++report.violation_count;
  };

  std::vector<mpz_class> a;
  tau.segment(1, limit, a);  // a[m - 1] = a(m)
  auto at = [&](std::size_t m) -> const mpz_class& { return a[m - 1]; };
  const auto k1 = static_cast<unsigned long>(tau.weight() - 1);

  if (at(1) != 1) violation(1);
  const FactorSieve sieve(static_cast<std::uint32_t>(limit));
  mpz_class lhs, rhs, pk;
  for (std::uint32_t m = 1; m <= limit; ++m) {
    // a(m)^2 <= d(m)^2 m^{k-1}
    lhs = at(m) * at(m);
    const auto d = sieve.divisor_count(m);
    rhs = pow_ui(m, k1) * d * d;
    ++report.divisor_bound_checks;
    if (lhs > rhs) violation(m);
    if (m < 2) continue;

    const auto factors = sieve.factor(m);
    const auto& first = factors.front();
    if (factors.size() > 1) {
      ++report.multiplicative_checks;
      if (at(m) != at(first.pe) * at(m / first.pe)) violation(m);
    } else if (first.e == 1) {
      ++report.deligne_prime_checks;
      if (lhs > 4 * pow_ui(m, k1)) violation(m);
    } else {
      // a(p^{e}) = a(p) a(p^{e-1}) - p^{k-1} a(p^{e-2})
      ++report.recurrence_checks;
      const std::uint32_t p = first.p;
      const std::uint32_t prev = m / p;
      pk = pow_ui(p, k1);
      if (at(m) != at(p) * at(prev) - pk * at(prev / p)) violation(m);
    }
  }
  return report;
}

}  // namespace isobar3::coeff
