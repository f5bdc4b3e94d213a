#include "isobar3/arith.hpp"

#include "isobar3/error.hpp"

namespace isobar3 {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::capacity_exceeded: return "CapacityExceeded";
    case Errc::unsupported_form: return "UnsupportedForm";
    case Errc::self_check_failed: return "SelfCheckFailed";
    case Errc::grid_out_of_range: return "GridOutOfRange";
    case Errc::degenerate_fit: return "DegenerateFit";
    case Errc::pole_encountered: return "PoleEncountered";
    case Errc::precision_unreachable: return "PrecisionUnreachable";
    case Errc::schemes_disagree: return "SchemesDisagree";
    case Errc::degenerate_denominator: return "DegenerateDenominator";
    case Errc::infeasible_budget: return "InfeasibleBudget";
    case Errc::regime_violated: return "RegimeViolated";
    case Errc::bad_geometry: return "BadGeometry";
    case Errc::quadrature_failure: return "QuadratureFailure";
    case Errc::no_stationary_point: return "NoStationaryPoint";
    case Errc::table_too_short: return "TableTooShort";
    case Errc::io_error: return "IoError";
    case Errc::integrity_error: return "IntegrityError";
    case Errc::config_error: return "ConfigError";
  }
  return "Unknown";
}

FactorSieve::FactorSieve(std::uint32_t limit) : limit_(limit), spf_(std::size_t(limit) + 1, 0) {
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes_.push_back(i);
    }
    for (std::uint32_t p : primes_) {
      const std::uint64_t m = std::uint64_t(p) * i;
      if (p > spf_[i] || m > limit) break;
      spf_[m] = p;
    }
  }
}

std::vector<FactorSieve::PrimePower> FactorSieve::factor(std::uint32_t n) const {
  std::vector<PrimePower> out;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.e;
      pp.pe *= p;
    }
    out.push_back(pp);
  }
  return out;
}

std::uint64_t FactorSieve::divisor_count(std::uint32_t n, unsigned j) const {
  // d_j(p^e) = C(e + j - 1, j - 1)
  std::uint64_t result = 1;
  for (const auto& pp : factor(n)) {
    std::uint64_t c = 1;
    for (unsigned i = 1; i < j; ++i) c = c * (pp.e + i) / i;
    result *= c;
  }
  return result;
}

std::vector<std::uint32_t> divisor_counts(std::uint32_t limit) {
  std::vector<std::uint32_t> d(std::size_t(limit) + 1, 0);
  for (std::uint32_t m = 1; m <= limit; ++m)
    for (std::uint32_t n = m; n <= limit; n += m) ++d[n];
  return d;
}

}  // namespace isobar3
