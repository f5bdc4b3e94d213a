#pragma once

#include <complex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "isobar3/cli/config.hpp"
#include "isobar3/coeff_engine.hpp"
#include "isobar3/isobaric.hpp"
#include "isobar3/l_eval.hpp"

namespace isobar3::cli {

using json = nlohmann::ordered_json;

// Doubles rounded to 12 significant digits so summaries stay byte-stable.
double round12(double v);
json num(double v);
json num(std::complex<double> z);  // [re, im]

struct CheckResult {
  std::string id;
  int criterion = 0;  // acceptance criterion number, 0 for supporting checks
  bool passed = false;
  std::string detail;  // module-tagged diagnostic on failure
  json metrics = json::object();
  double seconds = 0;
};

struct CheckContext {
  const RunConfig& cfg;
  coeff::LambdaTable lambda;
  sums::IsobaricTable isobaric;
  lfun::L1Value l1;
  std::vector<mpz_class> golden_tau;  // from the golden text file, may be empty
};

CheckResult check_coeff_oracle(const CheckContext& ctx);
CheckResult check_hecke_deligne(const CheckContext& ctx);
CheckResult check_convolution_oracle(const CheckContext& ctx);
CheckResult check_functional_equation(const CheckContext& ctx);
CheckResult check_l1_constant(const CheckContext& ctx);
CheckResult check_exponent_pairs(const CheckContext& ctx);
CheckResult check_jutila_regime(const CheckContext& ctx);
CheckResult check_error_exponent(const CheckContext& ctx);
CheckResult check_short_windows(const CheckContext& ctx);
CheckResult check_stationary_phase(const CheckContext& ctx);
CheckResult check_mellin_window(const CheckContext& ctx);
CheckResult check_oscillatory_probe(const CheckContext& ctx);

// Every check in order; errors thrown by a check turn into a failed result.
std::vector<CheckResult> run_all_checks(const CheckContext& ctx);

json to_json(const CheckResult& r, bool with_timing);

}  // namespace isobar3::cli
