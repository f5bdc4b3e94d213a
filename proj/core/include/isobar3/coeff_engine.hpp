#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace isobar3::coeff {

// A holomorphic Hecke eigenform of level 1. Only Delta (weight 12) is
// computed natively; other forms enter through a coefficient file.
struct CuspFormSpec {
  int weight = 12;
  int level = 1;
  std::string label = "delta";

  static CuspFormSpec delta() { return {}; }
  bool is_delta() const noexcept { return weight == 12 && level == 1 && label == "delta"; }
  // Throws invalid_argument unless weight is even and >= 12 and level == 1.
  void validate() const;
};

inline constexpr std::size_t kDefaultCap = 10'000'000;

struct BuildOptions {
  std::size_t cap = kDefaultCap;       // largest admissible table length
  std::size_t segment = 1u << 16;      // entries per work unit
  unsigned threads = 1;
};

// Moduli and Garner constants for exact reconstruction of signed integers
// of absolute value below product/2.
class CrtBasis {
 public:
  // Uses the fewest NTT primes whose product exceeds 2 * bound + 1.
  static CrtBasis covering(const mpz_class& bound);

  std::size_t size() const noexcept { return primes_.size(); }
  std::uint32_t prime(std::size_t i) const noexcept { return primes_[i]; }
  const mpz_class& product() const noexcept { return product_; }

  // residues.size() == size(); each residue already reduced.
  void reconstruct(std::span<const std::uint32_t> residues, mpz_class& out) const;
  std::uint32_t reduce(const mpz_class& value, std::size_t i) const;

 private:
  std::vector<std::uint32_t> primes_;
  std::vector<std::uint32_t> inverses_;  // inverses_[j * size + i] = p_j^{-1} mod p_i
  mpz_class product_;
  mpz_class half_;
};

// Exact q-expansion coefficients a(1..N) in arithmetic normalization.
// Values are stored as residues; exact integers are produced on request.
class TauTable {
 public:
  static TauTable from_integers(const CuspFormSpec& spec, std::span<const mpz_class> values);

  std::size_t size() const noexcept { return n_; }
  const CuspFormSpec& spec() const noexcept { return spec_; }
  int weight() const noexcept { return spec_.weight; }
  const CrtBasis& basis() const noexcept { return data_->basis; }

  mpz_class at(std::size_t n) const;  // 1 <= n <= size()
  // Writes a(first..last) (inclusive, 1-based) into out.
  void segment(std::size_t first, std::size_t last, std::vector<mpz_class>& out) const;

 private:
  struct Data {
    CrtBasis basis;
    std::vector<std::uint32_t> residues;  // residue of a(n) mod p_i at (n-1) * k + i
  };
  TauTable(CuspFormSpec spec, std::size_t n, std::shared_ptr<const Data> data)
      : spec_(std::move(spec)), n_(n), data_(std::move(data)) {}

  friend TauTable build_tau_table(std::size_t, const CuspFormSpec&, const BuildOptions&);

  CuspFormSpec spec_;
  std::size_t n_ = 0;
  std::shared_ptr<const Data> data_;
};

// Hecke eigenvalues lambda(n) = a(n) / n^{(k-1)/2}. Immutable, cheap to copy.
class LambdaTable {
 public:
  LambdaTable(int weight, std::vector<double> values);  // values[i] = lambda(i + 1)

  std::size_t size() const noexcept { return v_->size(); }
  int weight() const noexcept { return weight_; }
  double operator[](std::size_t n) const noexcept { return (*v_)[n - 1]; }  // 1-based
  std::span<const double> values() const noexcept { return *v_; }

 private:
  int weight_;
  std::shared_ptr<const std::vector<double>> v_;
};

// Sparse expansion prod_{m>=1} (1 - q^m)^3 = sum_j (-1)^j (2j+1) q^{j(j+1)/2},
// returned densely up to q^{terms-1}.
std::vector<std::int64_t> jacobi_cube(std::size_t terms);

// Exact coefficients of q prod (1 - q^m)^24 for n = 1..N.
// Throws CapacityExceeded above options.cap and UnsupportedForm unless spec is Delta.
TauTable build_tau_table(std::size_t n, const CuspFormSpec& spec = CuspFormSpec::delta(),
                         const BuildOptions& options = {});

// a / n^{(k-1)/2} rounded to double; relative error below one ulp.
double normalized_value(const mpz_class& a, std::uint64_t n, int weight);

LambdaTable normalize(const TauTable& tau, const CuspFormSpec& spec, const BuildOptions& options = {});

struct HeckeReport {
  std::size_t prime_squares_checked = 0;
  std::size_t coprime_pairs_checked = 0;
  std::size_t deligne_checked = 0;
  double max_prime_square_deviation = 0;
  double max_multiplicative_deviation = 0;
  double max_prime_abs = 0;      // max |lambda(p)|
  double max_divisor_ratio = 0;  // max |lambda(n)| / d(n)
};

// Floating self-check: lambda(p^2) = lambda(p)^2 - 1, multiplicativity on random
// coprime pairs, |lambda(p)| <= 2 and |lambda(n)| <= d(n). Throws SelfCheckFailed.
HeckeReport hecke_selfcheck(const LambdaTable& table, std::size_t pairs = 10'000,
                            std::uint64_t seed = 0x15ba3u, double tolerance = 1e-9);

struct ExactAuditReport {
  std::size_t limit = 0;
  std::size_t multiplicative_checks = 0;
  std::size_t recurrence_checks = 0;
  std::size_t deligne_prime_checks = 0;
  std::size_t divisor_bound_checks = 0;
  std::vector<std::size_t> violations;  // offending n, at most 16 recorded
  std::size_t violation_count = 0;
};

// Integer-exact versions of the Hecke relations and Deligne bounds for n <= limit.
ExactAuditReport exact_audit(const TauTable& tau, std::size_t limit);

}  // namespace isobar3::coeff
