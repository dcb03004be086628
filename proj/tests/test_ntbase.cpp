#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supercong/ntbase.hpp"

using namespace supercong;

TEST_CASE("sieve matches trial division") {
  auto primes = sieve_primes(2, 200);
  auto is_prime = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  std::size_t idx = 0;
  for (std::uint64_t n = 2; n <= 200; ++n) {
    if (is_prime(n)) {
      REQUIRE(idx < primes.size());
      CHECK(primes[idx++] == n);
    }
  }
  CHECK(idx == primes.size());
  CHECK(sieve_primes(10, 10).empty());
  CHECK(sieve_primes(11, 11) == std::vector<std::uint64_t>{11});
  CHECK(sieve_primes(14, 16).empty());
}

TEST_CASE("legendre symbol: euler criterion and multiplicativity") {
  for (std::uint64_t p : sieve_primes(3, 101)) {
    int units_plus = 0;
    for (long long a = 1; a < static_cast<long long>(p); ++a) {
      int s = legendre(a, p);
      CHECK((s == 1 || s == -1));
      if (s == 1) ++units_plus;
      for (long long b = 1; b < static_cast<long long>(p); ++b)
        CHECK(legendre(a * b, p) == legendre(a, p) * legendre(b, p));
    }
    // Exactly half the units are squares.
    CHECK(units_plus == static_cast<int>((p - 1) / 2));
    CHECK(legendre(0, p) == 0);
    CHECK(legendre(static_cast<long long>(p) * 7, p) == 0);
    // (-1|p) = 1 iff p = 1 mod 4.
    CHECK(legendre(-1, p) == (p % 4 == 1 ? 1 : -1));
  }
}

TEST_CASE("floor arithmetic is exact for all signs") {
  CHECK(floor_div(7, 2) == 3);
  CHECK(floor_div(-7, 2) == -4);
  CHECK(floor_div(-8, 2) == -4);
  CHECK(floor_div(0, 5) == 0);
  CHECK(floor_linear(1, 0, 4, 13) == 3);    // [13/4]
  CHECK(floor_linear(3, 0, 8, 13) == 4);    // [39/8]
  CHECK(floor_linear(1, -1, 2, 13) == 6);   // (13-1)/2
  CHECK(floor_linear(-1, 1, 3, 13) == -4);  // [(1-13)/3]
  CHECK_THROWS_AS(floor_linear(1, 0, 0, 13), math_error);
  CHECK_THROWS_AS(floor_linear(1, 0, -2, 13), math_error);
}

TEST_CASE("quadratic form representations, pinned small cases") {
  // 13 = 1 + 3*4
  auto r = represent_form(13, QuadForm{1, 1, 3});
  REQUIRE(r.has_value());
  CHECK(r->x == 1);
  CHECK(r->y == 2);
  // 4*31 = 124 = 16 + 27*4 (31 = 1 mod 3)
  auto r2 = represent_form(31, QuadForm{4, 1, 27});
  REQUIRE(r2.has_value());
  CHECK(r2->x == 4);
  CHECK(r2->y == 2);
  // 29 = 2 mod 3 has no representation 4p = x^2 + 27y^2.
  auto r3 = represent_form(29, QuadForm{4, 1, 27});
  CHECK_FALSE(r3.has_value());
  auto r4 = represent_form(37, QuadForm{4, 1, 27});  // 148 = 121 + 27
  REQUIRE(r4.has_value());
  CHECK(r4->x == 11);
  CHECK(r4->y == 1);
  // alpha == beta admits swapped solutions and must be flagged: 5 = 1 + 4.
  CHECK_THROWS_AS(represent_form(5, QuadForm{1, 1, 1}), math_error);
}

TEST_CASE("representation layer: every form used by the registry") {
  // (t, alpha, beta) triples that appear in rep clauses.
  const QuadForm forms[] = {
      {1, 1, 2},  {1, 1, 3},  {1, 1, 4},  {1, 1, 5},  {1, 1, 6},  {1, 1, 7},
      {1, 1, 9},  {1, 1, 10}, {1, 1, 13}, {1, 1, 15}, {1, 2, 3},  {1, 2, 5},
      {1, 3, 5},  {2, 1, 5},  {2, 1, 9},  {2, 1, 13}, {4, 1, 11}, {4, 1, 19},
      {4, 1, 27}, {4, 1, 51}, {4, 1, 75}, {4, 1, 123}, {4, 3, 17}, {4, 3, 25},
      {4, 3, 41},
  };
  for (std::uint64_t p : sieve_primes(3, 1999)) {
    for (const QuadForm& f : forms) {
      std::optional<QuadRep> rep;
      CHECK_NOTHROW(rep = represent_form(p, f));  // never ambiguous
      if (!rep) continue;
      CHECK(rep->x >= 1);
      CHECK(rep->y >= 1);
      CHECK(rep->x % p != 0);
      CHECK(rep->y % p != 0);
      CHECK(f.t * p == f.alpha * rep->x * rep->x + f.beta * rep->y * rep->y);
    }
  }
}

TEST_CASE("prime conditions") {
  PrimeCondition all;
  CHECK(check_condition(all, 7));

  PrimeCondition c1;
  c1.atoms.push_back({CondAtom::Kind::mod_in, 7, {1, 2, 4}, 0, 0});
  CHECK(check_condition(c1, 11));      // 11 = 4 mod 7
  CHECK_FALSE(check_condition(c1, 13));  // 13 = 6 mod 7

  PrimeCondition c2;
  c2.atoms.push_back({CondAtom::Kind::legendre_is, 0, {}, -2, 1});
  CHECK(check_condition(c2, 11));      // (-2|11) = 1 since 11 = 3 mod 8
  CHECK_FALSE(check_condition(c2, 5));

  PrimeCondition c3;  // (p|11) == -1
  c3.atoms.push_back({CondAtom::Kind::legendre_of_p, 0, {}, 11, -1});
  CHECK(check_condition(c3, 2));   // (2|11) = -1
  CHECK_FALSE(check_condition(c3, 5));   // (5|11) = 1
  CHECK_FALSE(check_condition(c3, 11));  // p = 11 itself never qualifies

  PrimeCondition c4;  // p mod 4 in {1} and p != 13
  c4.atoms.push_back({CondAtom::Kind::mod_in, 4, {1}, 0, 0});
  c4.atoms.push_back({CondAtom::Kind::prime_neq, 0, {}, 13, 0});
  CHECK(check_condition(c4, 17));
  CHECK_FALSE(check_condition(c4, 13));
  CHECK_FALSE(check_condition(c4, 19));
}
