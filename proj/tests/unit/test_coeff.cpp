#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "isobar3/coeff_engine.hpp"
#include "isobar3/coeff_io.hpp"
#include "isobar3/error.hpp"
#include "isobar3/reference/oracles.hpp"

using namespace isobar3;
using namespace isobar3::coeff;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an isobar3::Error");
  return Errc::invalid_argument;
}

std::filesystem::path scratch_dir(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / (std::string("isobar3_test_coeff_") + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("build_tau_table small examples") {
  const auto t1 = build_tau_table(1);
  CHECK(t1.size() == 1);
  CHECK(t1.at(1) == 1);

  const auto t5 = build_tau_table(5);
  const long want[] = {1, -24, 252, -1472, 4830};
  for (int n = 1; n <= 5; ++n) CHECK(t5.at(n) == want[n - 1]);

  const auto t6 = build_tau_table(6);
  CHECK(t6.at(6) == -6048);
  CHECK(t6.at(6) == t6.at(2) * t6.at(3));
}

TEST_CASE("fast path equals the naive expansion up to 2000") {
  const auto naive = reference::naive_tau(2000);
  const auto fast = build_tau_table(2000);
  for (std::size_t n = 1; n <= 2000; ++n) REQUIRE(fast.at(n) == naive[n - 1]);

  // shorter tables are prefixes, for random lengths
  auto rng = fixtures::rng(1);
  std::uniform_int_distribution<std::size_t> len(1, 2000);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = len(rng);
    const auto t = build_tau_table(n);
    REQUIRE(t.size() == n);
    for (std::size_t m = 1; m <= n; m += 1 + m / 7) CHECK(t.at(m) == naive[m - 1]);
    CHECK(t.at(n) == naive[n - 1]);
  }
}

TEST_CASE("segmentation and threads do not change the exact table") {
  const std::size_t n = 60'000;
  const auto a = build_tau_table(n, CuspFormSpec::delta(), {.segment = 1u << 16});
  const auto b = build_tau_table(n, CuspFormSpec::delta(), {.segment = 777, .threads = 3});
  std::vector<mpz_class> sa, sb;
  a.segment(1, n, sa);
  b.segment(1, n, sb);
  REQUIRE(sa.size() == n);
  for (std::size_t i = 0; i < n; ++i) REQUIRE(sa[i] == sb[i]);

  std::vector<mpz_class> mid;
  a.segment(40'000, 40'010, mid);
  CHECK(mid.size() == 11);
  CHECK(mid[0] == a.at(40'000));
}

TEST_CASE("capacity and form preconditions") {
  CHECK(code_of([] { build_tau_table(101, CuspFormSpec::delta(), {.cap = 100}); }) == Errc::capacity_exceeded);
  CHECK(code_of([] { build_tau_table(0); }) == Errc::invalid_argument);
  CHECK(code_of([] { build_tau_table(10, CuspFormSpec{16, 1, "e4delta"}); }) == Errc::unsupported_form);
  CHECK(code_of([] { CuspFormSpec{13, 1, "x"}.validate(); }) == Errc::invalid_argument);
  CHECK(code_of([] { CuspFormSpec{12, 2, "x"}.validate(); }) == Errc::invalid_argument);
}

TEST_CASE("jacobi cube matches the product expansion") {
  const std::size_t terms = 300;
  std::vector<std::int64_t> direct(terms, 0);
  direct[0] = 1;
  for (std::size_t m = 1; m < terms; ++m)
    for (int rep = 0; rep < 3; ++rep)
      for (std::size_t j = terms - 1; j >= m; --j) direct[j] -= direct[j - m];
  CHECK(jacobi_cube(terms) == direct);
}

TEST_CASE("CRT basis reconstructs random signed integers") {
  const mpz_class bound = mpz_class(1) << 200;
  const auto basis = CrtBasis::covering(bound);
  CHECK(basis.product() > 2 * bound + 1);
  gmp_randclass gen(gmp_randinit_default);
  gen.seed(12345);
  for (int i = 0; i < 200; ++i) {
    mpz_class v = gen.get_z_range(bound);
    if (i % 2) v = -v;
    std::vector<std::uint32_t> res(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) res[j] = basis.reduce(v, j);
    mpz_class back;
    basis.reconstruct(res, back);
    REQUIRE(back == v);
  }
}

TEST_CASE("normalize") {
  const auto lam = fixtures::lambda(100'000);
  CHECK(lam[1] == 1.0);
  CHECK(lam[2] == doctest::Approx(-24.0 / std::pow(2.0, 5.5)).epsilon(1e-15));
  CHECK(lam[2] == doctest::Approx(-0.5303300858899106).epsilon(1e-15));
  CHECK(normalized_value(mpz_class(-24), 2, 12) == -24.0 / std::pow(2.0, 5.5));
  CHECK(code_of([&] { normalize(build_tau_table(10), CuspFormSpec{16, 1, "other"}); }) == Errc::invalid_argument);
}

TEST_CASE("Deligne and divisor bounds on the float table") {
  const auto lam = fixtures::lambda(100'000);
  for (std::uint64_t n = 2; n <= 100'000; ++n) {
    const auto d = reference::divisor_count(n);
    if (d == 2) REQUIRE(std::abs(lam[n]) <= 2.0);
    if (n <= 20'000) REQUIRE(std::abs(lam[n]) <= double(d));
  }
}

TEST_CASE("hecke_selfcheck") {
  const auto lam = fixtures::lambda(100'000);
  CHECK(std::abs(lam[4] - (lam[2] * lam[2] - 1)) <= 1e-9);
  CHECK(std::abs(lam[18] - lam[2] * lam[9]) <= 1e-9);
  const auto rep = hecke_selfcheck(lam);
  CHECK(rep.prime_squares_checked > 0);
  CHECK(rep.coprime_pairs_checked > 0);
  CHECK(rep.max_prime_abs <= 2.0);
  CHECK(rep.max_divisor_ratio <= 1.0);

  std::vector<double> bad(lam.values().begin(), lam.values().end());
  bad[17] += 1e-6;  // lambda(18)
  CHECK(code_of([&] { hecke_selfcheck(LambdaTable(12, bad)); }) == Errc::self_check_failed);
}

TEST_CASE("exact audit has zero violations to 1e5 and catches tampering") {
  const auto& tau = fixtures::tau(100'000);
  const auto rep = exact_audit(tau, 100'000);
  CHECK(rep.violation_count == 0);
  CHECK(rep.deligne_prime_checks == 9592);
  CHECK(rep.divisor_bound_checks == 100'000);

  std::vector<mpz_class> v;
  tau.segment(1, 200, v);
  v[5] += 1;  // tau(6)
  const auto broken = TauTable::from_integers(CuspFormSpec::delta(), v);
  const auto bad = exact_audit(broken, 200);
  CHECK(bad.violation_count > 0);
  CHECK(std::find(bad.violations.begin(), bad.violations.end(), 6u) != bad.violations.end());
}

TEST_CASE("growth sanity through exact squares") {
  const auto naive = reference::naive_tau(600);
  for (std::uint64_t n = 1; n <= 600; ++n) {
    mpz_class lhs = naive[n - 1] * naive[n - 1];
    mpz_class rhs;
    mpz_ui_pow_ui(rhs.get_mpz_t(), n, 11);
    const auto d = reference::divisor_count(n);
    rhs *= d * d;
    REQUIRE(lhs <= rhs);
  }
}

TEST_CASE("cache encoding") {
  const auto lam = fixtures::lambda(10'000);
  const auto bytes = encode_cache(lam);
  CHECK(bytes.size() == kCacheHeaderBytes + 8 * 10'000);
  CHECK(bytes[0] == 'I');
  CHECK(bytes[1] == 'B');
  CHECK(bytes[2] == '3');
  const auto back = decode_cache(bytes);
  REQUIRE(back.size() == lam.size());
  CHECK(back.weight() == 12);
  for (std::size_t n = 1; n <= lam.size(); ++n) REQUIRE(back[n] == lam[n]);

  auto truncated = bytes;
  truncated.pop_back();
  CHECK(code_of([&] { decode_cache(truncated); }) == Errc::integrity_error);
  auto wrong_magic = bytes;
  wrong_magic[0] = 'X';
  CHECK(code_of([&] { decode_cache(wrong_magic); }) == Errc::integrity_error);

  const auto dir = scratch_dir("cache");
  write_cache(dir / "t.ib3", lam);
  const auto header = read_cache_header(dir / "t.ib3");
  REQUIRE(header);
  CHECK(header->n == 10'000);
  CHECK(header->weight == 12);
  CHECK(header->version == kCacheVersion);
  CHECK(read_cache(dir / "t.ib3")[777] == lam[777]);
  CHECK_FALSE(read_cache_header(dir / "missing.ib3"));
  CHECK(code_of([&] { read_file(dir / "missing.ib3"); }) == Errc::io_error);
}

TEST_CASE("golden tau file round trip and foreign forms") {
  const auto tau = build_tau_table(500);
  const auto text = format_golden_tau(tau, 300);
  CHECK(text.rfind("1\t1\n2\t-24\n3\t252\n", 0) == 0);

  const auto dir = scratch_dir("golden");
  write_golden_tau(dir / "g.txt", tau, 300);
  const CuspFormSpec other{12, 1, "copy"};
  const auto back = read_golden_tau(dir / "g.txt", other);
  REQUIRE(back.size() == 300);
  CHECK(back.spec().label == "copy");
  for (std::size_t n = 1; n <= 300; ++n) REQUIRE(back.at(n) == tau.at(n));

  std::ofstream(dir / "bad.txt") << "1\t1\n3\t252\n";
  CHECK(code_of([&] { read_golden_tau(dir / "bad.txt", other); }) == Errc::integrity_error);
  std::ofstream(dir / "junk.txt") << "1\t1\n2\tabc\n";
  CHECK(code_of([&] { read_golden_tau(dir / "junk.txt", other); }) == Errc::integrity_error);
}

TEST_CASE("atomic writes leave no temporary behind") {
  const auto dir = scratch_dir("atomic");
  write_file_atomic(dir / "a.txt", std::string("first"));
  write_file_atomic(dir / "a.txt", std::string("second"));
  const auto bytes = read_file(dir / "a.txt");
  CHECK(std::string(bytes.begin(), bytes.end()) == "second");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  CHECK(code_of([&] { write_file_atomic(dir / "a.txt" / "under_a_file.txt", std::string("x")); }) == Errc::io_error);
}
