#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isobar3 {

// Failure categories shared by every module. The CLI maps them onto exit codes.
enum class Errc {
  invalid_argument,
  capacity_exceeded,
  unsupported_form,
  self_check_failed,
  grid_out_of_range,
  degenerate_fit,
  pole_encountered,
  precision_unreachable,
  schemes_disagree,
  degenerate_denominator,
  infeasible_budget,
  regime_violated,
  bad_geometry,
  quadrature_failure,
  no_stationary_point,
  table_too_short,
  io_error,
  integrity_error,
  config_error,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string_view module, const std::string& what)
      : std::runtime_error(std::string(module) + ": " + what), code_(code), module_(module) {}

  Errc code() const noexcept { return code_; }
  std::string_view module() const noexcept { return module_; }

 private:
  Errc code_;
  std::string module_;
};

}  // namespace isobar3
