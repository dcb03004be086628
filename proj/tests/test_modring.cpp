#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "supercong/modring.hpp"

using namespace supercong;
using boost::multiprecision::cpp_int;

namespace {

// Independent reduction of a (possibly huge) signed value into [0, pe).
std::uint64_t oracle_mod(const cpp_int& z, std::uint64_t pe) {
  cpp_int r = z % pe;
  if (r < 0) r += pe;
  return r.convert_to<std::uint64_t>();
}

}  // namespace

TEST_CASE("modulus construction bounds") {
  Modulus m(5, 3);
  CHECK(m.pe == 125);
  CHECK(m.pow_p(0) == 1);
  CHECK(m.pow_p(2) == 25);
  CHECK_THROWS_AS(Modulus(5, 0), math_error);
  CHECK_THROWS_AS(Modulus(5, 6), math_error);
  CHECK_THROWS_AS(Modulus(1, 1), math_error);
  // 9973^4 < 2^63 but 9973^5 is not.
  CHECK_NOTHROW(Modulus(9973, 4));
  CHECK_THROWS_AS(Modulus(9973, 5), math_error);
  // Largest prime usable at e = 5.
  CHECK_NOTHROW(Modulus(6203, 5));
  CHECK_THROWS_AS(Modulus(6211, 5), math_error);
}

TEST_CASE("ring operations, pinned values") {
  Modulus m(5, 3);
  CHECK(res_mul(m, Residue{2}, Residue{63}).m == 1);
  CHECK(res_inv(m, Residue{2}).m == 63);
  CHECK(res_add(m, Residue{124}, Residue{3}).m == 2);
  CHECK(res_sub(m, Residue{3}, Residue{124}).m == 4);
  CHECK(res_neg(m, Residue{1}).m == 124);
  CHECK(res_from_int(m, -1).m == 124);
  CHECK(res_from_int(m, -250).m == 0);

  Modulus m49(7, 2);
  // 2^6 = 64 = 49 + 15.
  CHECK(res_pow(m49, Residue{2}, 6).m == 15);
  CHECK(res_pow(m49, Residue{2}, 0).m == 1);
  CHECK(res_pow(m49, Residue{3}, -1).m == res_inv(m49, Residue{3}).m);
}

TEST_CASE("multiplication matches big-integer oracle") {
  std::mt19937_64 rng(20260816);
  std::uniform_int_distribution<long long> dist(-1000000000LL, 1000000000LL);
  const std::uint64_t primes[] = {3, 5, 7, 97, 9973};
  for (std::uint64_t p : primes) {
    for (unsigned e = 1; e <= 5; ++e) {
      if (e == 5 && p > 6208) continue;
      Modulus m(p, e);
      for (int i = 0; i < 200; ++i) {
        long long z1 = dist(rng), z2 = dist(rng);
        Residue prod = res_mul(m, res_from_int(m, z1), res_from_int(m, z2));
        CHECK(prod.m == oracle_mod(cpp_int(z1) * z2, m.pe));
        Residue via_vu = vu_to_residue(
            m, vu_mul(m, vu_from_int(m, z1), vu_from_int(m, z2)));
        CHECK(via_vu.m == prod.m);
      }
    }
  }
}

TEST_CASE("inverse is total on units, exhaustively for small p") {
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    for (unsigned e = 1; e <= 3; ++e) {
      Modulus m(p, e);
      for (std::uint64_t a = 0; a < m.pe; ++a) {
        if (a % p == 0) {
          CHECK_THROWS_AS(res_inv(m, Residue{a}), math_error);
        } else {
          Residue inv = res_inv(m, Residue{a});
          CHECK(res_mul(m, Residue{a}, inv).m == 1);
        }
      }
    }
  }
}

TEST_CASE("inverse near the 2^63 boundary") {
  Modulus m(6203, 5);  // pe = 6203^5, just under 2^63
  Residue a{m.pe - 2};
  Residue inv = res_inv(m, a);
  CHECK(res_mul(m, a, inv).m == 1);
}

TEST_CASE("fermat exponentiation") {
  for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    Modulus m(p, 1);
    for (std::uint64_t a = 1; a < p; ++a)
      CHECK(res_pow(m, Residue{a}, static_cast<long long>(p - 1)).m == 1);
  }
}

TEST_CASE("rational residues") {
  Modulus m(5, 3);
  CHECK(res_from_rational(m, 1, 2).m == 63);
  CHECK(res_from_rational(m, -3, 4).m ==
        res_mul(m, res_from_int(m, -3), res_inv(m, Residue{4})).m);
  CHECK(res_from_rational(m, 7, -2).m == res_from_int(m, 7 * 63 * -1).m);
  CHECK_THROWS_AS(res_from_rational(m, 1, 5), math_error);
  CHECK_THROWS_AS(res_from_rational(m, 1, 0), math_error);
  try {
    res_from_rational(m, 1, 10);
    CHECK(false);
  } catch (const math_error& err) {
    CHECK(err.code() == errc::denominator_not_unit);
  }
}

TEST_CASE("congruence at lower exponents") {
  Modulus m(7, 3);
  Residue a{15 + 49 * 2}, b{15 + 49 * 5};
  CHECK(res_congruent(m, a, b, 1));
  CHECK(res_congruent(m, a, b, 2));
  CHECK_FALSE(res_congruent(m, a, b, 3));
}

TEST_CASE("valuation-unit form, pinned values") {
  Modulus m(5, 3);
  ValUnit z = vu_from_int(m, 20);
  CHECK_FALSE(z.zero);
  CHECK(z.v == 1);
  CHECK(z.u == 4);

  ValUnit s = vu_add(m, ValUnit{false, 1, 4}, ValUnit{false, 0, 1});
  CHECK(s.v == 0);
  CHECK(s.u == 21);
  CHECK(vu_to_residue(m, s).m == 21);

  CHECK(vu_from_int(m, 0).zero);
  CHECK(vu_to_residue(m, vu_from_int(m, 250)).m == 0);   // v=3 saturates e=3
  CHECK(vu_to_residue(m, vu_from_int(m, -75)).m == 50);  // -75 = 125 - 75
}

TEST_CASE("valuation-unit division") {
  Modulus m(5, 3);
  // 100 / 20 = 5
  ValUnit q = vu_div(m, vu_from_int(m, 100), vu_from_int(m, 20));
  CHECK(vu_to_residue(m, q).m == 5);
  // 20 / 100 has valuation -1
  CHECK_THROWS_AS(vu_div(m, vu_from_int(m, 20), vu_from_int(m, 100)), math_error);
  CHECK_THROWS_AS(vu_div(m, vu_from_int(m, 20), vu_zero()), math_error);
  CHECK(vu_div(m, vu_zero(), vu_from_int(m, 20)).zero);
  // Dividing keeps units exact: (2 * 5^4) / 5^2 = 2 * 5^2 = 50, even though
  // 2 * 5^4 = 0 mod 5^3.
  ValUnit big = vu_mul(m, vu_from_int(m, 2), vu_pow(m, vu_from_int(m, 5), 4));
  CHECK(vu_to_residue(m, big).m == 0);
  CHECK(vu_to_residue(m, vu_div(m, big, vu_from_int(m, 25))).m == 50);
}

TEST_CASE("valuation-unit addition is commutative and associative below saturation") {
  Modulus m(7, 3);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> dist(-50000, 50000);
  for (int i = 0; i < 500; ++i) {
    long long a = dist(rng), b = dist(rng), c = dist(rng);
    ValUnit va = vu_from_int(m, a), vb = vu_from_int(m, b), vc = vu_from_int(m, c);
    ValUnit ab = vu_add(m, va, vb), ba = vu_add(m, vb, va);
    CHECK(vu_to_residue(m, ab).m == vu_to_residue(m, ba).m);
    CHECK(vu_to_residue(m, ab).m == res_from_int(m, a + b).m);
    Residue lhs = vu_to_residue(m, vu_add(m, ab, vc));
    Residue rhs = vu_to_residue(m, vu_add(m, va, vu_add(m, vb, vc)));
    CHECK(lhs.m == rhs.m);
    CHECK(lhs.m == res_from_int(m, a + b + c).m);
  }
  // Saturating case: units cancel mod p^e.
  ValUnit sat = vu_add(m, ValUnit{false, 0, 1}, ValUnit{false, 0, m.pe - 1});
  CHECK(sat.zero);
}

TEST_CASE("valuation-unit powers and residue extraction") {
  Modulus m(3, 4);
  ValUnit six = vu_from_int(m, 6);
  ValUnit cube = vu_pow(m, six, 3);  // 216 = 2^3 * 27
  CHECK(cube.v == 3);
  CHECK(vu_to_residue(m, cube).m == 216 % 81);
  CHECK(vu_pow(m, vu_zero(), 0).u == 1);  // empty product
  CHECK(vu_pow(m, vu_zero(), 2).zero);

  Residue r{54};  // 2 * 27
  ValUnit vr = vu_from_residue(m, r);
  CHECK(vr.v == 3);
  CHECK(vr.u == 2);
  CHECK(vu_from_residue(m, Residue{0}).zero);
}
