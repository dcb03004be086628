#include "supercong/ntbase.hpp"

#include <algorithm>
#include <cmath>

namespace supercong {

std::vector<std::uint64_t> sieve_primes(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> primes;
  if (hi < 2 || hi < lo) return primes;
  std::vector<bool> composite(hi + 1, false);
  for (std::uint64_t i = 2; i * i <= hi; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j <= hi; j += i) composite[j] = true;
  }
  for (std::uint64_t i = std::max<std::uint64_t>(lo, 2); i <= hi; ++i)
    if (!composite[i]) primes.push_back(i);
  return primes;
}

int legendre(long long a, std::uint64_t p) {
  Modulus m(p, 1);
  Residue r = res_from_int(m, a);
  if (r.m == 0) return 0;
  // Euler's criterion: a^((p-1)/2) is 1 or p-1.
  Residue s = res_pow(m, r, static_cast<long long>((p - 1) / 2));
  return s.m == 1 ? 1 : -1;
}

long long floor_div(long long num, long long den) {
  long long q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

long long floor_linear(long long a, long long b, long long c, std::uint64_t p) {
  if (c <= 0) throw math_error(errc::out_of_range, "floor denominator must be positive");
  return floor_div(a * static_cast<long long>(p) + b, c);
}

namespace {

// Integer square root with exactness flag.
bool perfect_square(std::uint64_t n, std::uint64_t* root) {
  if (n == 0) { *root = 0; return true; }
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  *root = r;
  return r * r == n;
}

}  // namespace

std::optional<QuadRep> represent_form(std::uint64_t p, QuadForm form) {
  const std::uint64_t target = form.t * p;
  std::optional<QuadRep> found;
  for (std::uint64_t y = 1; form.beta * y * y < target; ++y) {
    std::uint64_t rest = target - form.beta * y * y;
    if (rest % form.alpha != 0) continue;
    std::uint64_t x;
    if (!perfect_square(rest / form.alpha, &x) || x == 0) continue;
    if (found && found->x != x)
      throw math_error(errc::ambiguous_representation,
                       "form represents p with two different x^2");
    if (!found) found = QuadRep{form, x, y};
  }
  return found;
}

bool check_condition(const PrimeCondition& cond, std::uint64_t p) {
  for (const CondAtom& atom : cond.atoms) {
    switch (atom.kind) {
      case CondAtom::Kind::always:
        break;
      case CondAtom::Kind::mod_in: {
        std::uint64_t r = p % atom.n;
        if (std::find(atom.classes.begin(), atom.classes.end(), r) ==
            atom.classes.end())
          return false;
        break;
      }
      case CondAtom::Kind::legendre_is:
        if (legendre(atom.value, p) != atom.sign) return false;
        break;
      case CondAtom::Kind::legendre_of_p:
        // (p | q) for a fixed odd prime q.
        if (p % static_cast<std::uint64_t>(atom.value) == 0) return false;
        if (legendre(static_cast<long long>(p % atom.value),
                     static_cast<std::uint64_t>(atom.value)) != atom.sign)
          return false;
        break;
      case CondAtom::Kind::prime_neq:
        if (p == static_cast<std::uint64_t>(atom.value)) return false;
        break;
    }
  }
  return true;
}

}  // namespace supercong
