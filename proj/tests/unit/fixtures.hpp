#pragma once

#include <cstdint>
#include <random>

#include "isobar3/coeff_engine.hpp"

namespace fixtures {

// Tables shared by the cases of one test binary, built on first use.
inline const isobar3::coeff::TauTable& tau(std::size_t n) {
  static std::size_t built = 0;
  static isobar3::coeff::TauTable table = isobar3::coeff::build_tau_table(1);
  if (built != n) {
    table = isobar3::coeff::build_tau_table(n);
    built = n;
  }
  return table;
}

inline isobar3::coeff::LambdaTable lambda(std::size_t n) {
  static std::size_t built = 0;
  static isobar3::coeff::LambdaTable table(12, std::vector<double>{1.0});
  if (built != n) {
    table = isobar3::coeff::normalize(isobar3::coeff::build_tau_table(n), isobar3::coeff::CuspFormSpec::delta());
    built = n;
  }
  return table;
}

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed0000u + salt); }

}  // namespace fixtures
