#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "supercong/ntbase.hpp"
#include "supercong/sumeval.hpp"

using namespace supercong;
using boost::multiprecision::cpp_int;

namespace {

cpp_int big_binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  cpp_int acc = 1;
  for (long long i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;
  }
  return acc;
}

// Exact valuation/unit of a positive big integer, for table cross-checks.
std::pair<unsigned, std::uint64_t> big_val_unit(cpp_int z, const Modulus& mod) {
  unsigned v = 0;
  while (z % mod.p == 0) {
    z /= mod.p;
    ++v;
  }
  cpp_int u = z % mod.pe;
  return {v, u.convert_to<std::uint64_t>()};
}

}  // namespace

TEST_CASE("binomial tables, pinned entries") {
  Modulus m5(5, 1);
  auto t5 = build_binom_tables(m5);
  CHECK(t5.c2[3].v == 1);  // C(6,3) = 20 = 5 * 4
  CHECK(t5.c2[3].u == 4);

  Modulus m7(7, 3);
  auto t7 = build_binom_tables(m7);
  CHECK(t7.c2[5].v == 1);  // C(10,5) = 252 = 7 * 36
  CHECK(t7.c2[5].u == 36);
  CHECK(t7.c2[0].u == 1);
  CHECK(t7.c6[1].v == 0);  // C(6,3) = 20, a unit mod 7
  CHECK(t7.c6[1].u == 20);
}

TEST_CASE("binomial tables match exact binomials") {
  for (std::uint64_t p : {5, 7, 11, 13}) {
    Modulus m(p, 3);
    auto t = build_binom_tables(m);
    for (std::uint64_t k = 0; k < p; ++k) {
      auto [v2, u2] = big_val_unit(big_binom(2 * k, k), m);
      CHECK(t.c2[k].v == v2);
      CHECK(t.c2[k].u == u2);
      auto [v3, u3] = big_val_unit(big_binom(3 * k, k), m);
      CHECK(t.c3[k].v == v3);
      CHECK(t.c3[k].u == u3);
      auto [v4, u4] = big_val_unit(big_binom(4 * k, 2 * k), m);
      CHECK(t.c4[k].v == v4);
      CHECK(t.c4[k].u == u4);
      auto [v6, u6] = big_val_unit(big_binom(6 * k, 3 * k), m);
      CHECK(t.c6[k].v == v6);
      CHECK(t.c6[k].u == u6);
    }
  }
}

TEST_CASE("binomials below p") {
  Modulus m(13, 2);
  CHECK(binom_floor(m, 6, 3).m == 20);
  CHECK(binom_floor(m, 12, 5).m == 792 % 169);
  CHECK(binom_floor(m, 5, 0).m == 1);
  CHECK(binom_floor(m, 5, 7).m == 0);
  CHECK(binom_floor(m, 5, -1).m == 0);
  CHECK_THROWS_AS(binom_floor(m, 13, 2), math_error);
  CHECK_THROWS_AS(binom_floor(m, -2, 1), math_error);
}

TEST_CASE("weighted sums, pinned values") {
  // sum C(2k,k)^3, k=0..2, mod 27: 1 + 8 + 216 = 225 = 8*27 + 9
  Modulus m3(3, 3);
  auto t3 = build_binom_tables(m3);
  SumSpec cube;
  cube.n2 = 3;
  CHECK(weighted_sum(m3, t3, cube).m == 9);

  // half-range sum C(2k,k)^3/(k+1) at p=5: 1 + 8/2 + 216/3 = 77 = 2 mod 25
  Modulus m5(5, 2);
  auto t5 = build_binom_tables(m5);
  SumSpec r7;
  r7.n2 = 3;
  r7.denom = DenomKind::k_plus_1;
  r7.denom_exp = 1;
  r7.limit = SumLimit::half;
  CHECK(weighted_sum(m5, t5, r7).m == 2);

  // term counts: weight 1, no factors
  SumSpec ones;
  CHECK(weighted_sum(m5, t5, ones).m == 5);             // p terms
  ones.limit = SumLimit::half;
  CHECK(weighted_sum(m5, t5, ones).m == 3);             // (p+1)/2 terms
}

TEST_CASE("sequence weighted sums, pinned values") {
  // sum n^2 A_n, n=0..2, mod 3: 0 + 5 + 4*73 = 297 = 0 mod 3
  Modulus m3(3, 1);
  auto t3 = build_binom_tables(m3);
  auto a = seq_by_recurrence(m3, Seq::A, 3);
  SumSpec s;
  s.weight.c = {0, 0, 1};
  s.seq = Seq::A;
  CHECK(sequence_weighted_sum(m3, t3, s, a).m == 0);
  // sum A_n, n=0..2: 1 + 5 + 73 = 79 = 1 mod 3
  SumSpec plain;
  plain.weight.c = {1};
  plain.seq = Seq::A;
  CHECK(sequence_weighted_sum(m3, t3, plain, a).m == 1);
  // mismatched entry points
  CHECK_THROWS_AS(weighted_sum(m3, t3, plain), math_error);
  SumSpec noseq;
  CHECK_THROWS_AS(sequence_weighted_sum(m3, t3, noseq, a), math_error);
  CHECK_THROWS_AS(sequence_weighted_sum(m3, t3, plain, std::span<const Residue>(a.data(), 2)),
                  math_error);
}

TEST_CASE("base handling") {
  Modulus m5(5, 2);
  auto t5 = build_binom_tables(m5);
  // sum (-1)^k, k=0..4 = 1
  SumSpec alt;
  alt.base_num = -1;
  CHECK(weighted_sum(m5, t5, alt).m == 1);
  // sum 2^k, k=0..4 = 31 = 6 mod 25
  SumSpec geo;
  geo.base_num = 2;
  CHECK(weighted_sum(m5, t5, geo).m == 6);
  // sum 1/2^k = 1 + 13 + ... : 2^-1 = 13 mod 25; 1+13+19+22+11 = 66 = 16
  SumSpec inv2;
  inv2.base_den = 2;
  CHECK(weighted_sum(m5, t5, inv2).m == 16);
  // p | base denominator is the skip signal
  SumSpec bad;
  bad.base_den = -10;
  CHECK_THROWS_AS(weighted_sum(m5, t5, bad), math_error);
  try {
    weighted_sum(m5, t5, bad);
  } catch (const math_error& err) {
    CHECK(err.code() == errc::base_divisible_by_p);
  }
  // p | base numerator is fine: sum 5^k mod 25 = 1 + 5 = 6
  SumSpec pnum;
  pnum.base_num = 5;
  CHECK(weighted_sum(m5, t5, pnum).m == 6);
}

TEST_CASE("division by 2k-1 across the p-divisible term") {
  // sum_{k=0}^{p-1} C(2k,k)^3/(2k-1) includes k=(p+1)/2 where 2k-1 = p and
  // the numerator's valuation is exactly 3.
  Modulus m(7, 3);
  auto t = build_binom_tables(m);
  SumSpec s;
  s.n2 = 3;
  s.denom = DenomKind::two_k_minus_1;
  s.denom_exp = 1;
  cpp_int exact = 0;
  cpp_int denom_prod = 1;
  // exact rational sum via common denominator: sum n_k/d_k with d_k = 2k-1
  // equals (sum n_k * prod_{j != k} d_j) / prod d_j.
  cpp_int num_acc = 0;
  for (long long k = 0; k <= 6; ++k) denom_prod *= 2 * k - 1;
  for (long long k = 0; k <= 6; ++k) {
    cpp_int nk = big_binom(2 * k, k);
    nk = nk * nk * nk;
    num_acc += nk * (denom_prod / (2 * k - 1));
  }
  // denominator is -1 * 1 * 3 * 5 * 7 * 9 * 11: one factor of 7
  Modulus m4(7, 4);
  cpp_int num_red = num_acc % m4.pe;
  if (num_red < 0) num_red += m4.pe;
  cpp_int den_red = denom_prod % m4.pe;
  if (den_red < 0) den_red += m4.pe;
  ValUnit vn = vu_from_residue(m4, Residue{num_red.convert_to<std::uint64_t>()});
  ValUnit vd = vu_from_residue(m4, Residue{den_red.convert_to<std::uint64_t>()});
  Residue expect4 = vu_to_residue(m4, vu_div(m4, vn, vd));
  CHECK(weighted_sum(m, t, s).m == expect4.m % m.pe);
}

TEST_CASE("negative valuation in a term is reported") {
  // sum 1/(2k-1) hits k=(p+1)/2 with nothing to cover the p.
  Modulus m(5, 2);
  auto t = build_binom_tables(m);
  SumSpec s;
  s.denom = DenomKind::two_k_minus_1;
  s.denom_exp = 1;
  try {
    weighted_sum(m, t, s);
    CHECK(false);
  } catch (const math_error& err) {
    CHECK(err.code() == errc::negative_valuation);
  }
}

TEST_CASE("wolstenholme: harmonic numbers vanish mod p^2") {
  for (std::uint64_t p : sieve_primes(5, 1999)) {
    Modulus m(p, 2);
    Residue h{0};
    for (std::uint64_t k = 1; k < p; ++k)
      h = res_add(m, h, res_inv(m, res_from_uint(m, k)));
    CHECK(h.m == 0);
  }
}

TEST_CASE("morley: central binomial vs 4^(p-1) mod p^3") {
  for (std::uint64_t p : sieve_primes(5, 1999)) {
    Modulus m(p, 3);
    Residue lhs = binom_floor(m, static_cast<long long>(p) - 1,
                              (static_cast<long long>(p) - 1) / 2);
    Residue rhs = res_pow(m, res_from_int(m, 4), static_cast<long long>(p) - 1);
    if (((p - 1) / 2) % 2 == 1) rhs = res_neg(m, rhs);
    CHECK(lhs.m == rhs.m);
  }
}
