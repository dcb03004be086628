#include "supercong/modring.hpp"

namespace supercong {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(u128(a) * b % m);
}

// p^r mod m by repeated multiplication; r may exceed e.
std::uint64_t pow_p_mod(std::uint64_t p, unsigned r, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  for (unsigned i = 0; i < r; ++i) {
    acc = mulmod(acc, p, m);
    if (acc == 0) break;
  }
  return acc;
}

}  // namespace

const char* errc_name(errc code) {
  switch (code) {
    case errc::out_of_range: return "out-of-range";
    case errc::not_unit: return "not-unit";
    case errc::denominator_not_unit: return "denominator-not-unit";
    case errc::divide_by_zero: return "divide-by-zero";
    case errc::negative_valuation: return "negative-valuation";
    case errc::base_divisible_by_p: return "base-divisible-by-p";
    case errc::ambiguous_representation: return "ambiguous-representation";
    case errc::representation_not_found: return "representation-not-found";
    case errc::parse_error: return "parse-error";
    case errc::unsupported: return "unsupported";
  }
  return "unknown";
}

Modulus::Modulus(std::uint64_t p_, unsigned e_) : p(p_), e(e_), pe(1) {
  if (p < 2) throw math_error(errc::out_of_range, "modulus base must be >= 2");
  if (e < 1 || e > 5)
    throw math_error(errc::out_of_range, "modulus exponent must be in 1..5");
  const std::uint64_t limit = std::uint64_t{1} << 63;
  for (unsigned i = 0; i < e; ++i) {
    if (pe >= (limit + p - 1) / p)
      throw math_error(errc::out_of_range, "p^e must be below 2^63");
    pe *= p;
  }
}

std::uint64_t Modulus::pow_p(unsigned r) const {
  if (r > e) throw math_error(errc::out_of_range, "power exceeds exponent");
  std::uint64_t acc = 1;
  for (unsigned i = 0; i < r; ++i) acc *= p;
  return acc;
}

Residue res_from_uint(const Modulus& mod, std::uint64_t z) {
  return Residue{z % mod.pe};
}

Residue res_from_int(const Modulus& mod, long long z) {
  if (z >= 0) return res_from_uint(mod, static_cast<std::uint64_t>(z));
  // Negate in unsigned space so LLONG_MIN is fine too.
  std::uint64_t az = ~static_cast<std::uint64_t>(z) + 1;
  std::uint64_t r = az % mod.pe;
  return Residue{r == 0 ? 0 : mod.pe - r};
}

Residue res_add(const Modulus& mod, Residue a, Residue b) {
  std::uint64_t s = a.m + b.m;  // pe < 2^63 keeps this from wrapping
  if (s >= mod.pe) s -= mod.pe;
  return Residue{s};
}

Residue res_sub(const Modulus& mod, Residue a, Residue b) {
  return Residue{a.m >= b.m ? a.m - b.m : a.m + (mod.pe - b.m)};
}

Residue res_mul(const Modulus& mod, Residue a, Residue b) {
  return Residue{mulmod(a.m, b.m, mod.pe)};
}

Residue res_neg(const Modulus& mod, Residue a) {
  return Residue{a.m == 0 ? 0 : mod.pe - a.m};
}

Residue res_inv(const Modulus& mod, Residue a) {
  if (a.m % mod.p == 0)
    throw math_error(errc::not_unit, "residue has no inverse");
  // Extended Euclid on (a, pe); gcd is 1 because a is a unit.  Bezout
  // coefficients are tracked in 128 bits since |t| can reach pe ~ 2^63.
  std::int64_t r0 = static_cast<std::int64_t>(mod.pe);
  std::int64_t r1 = static_cast<std::int64_t>(a.m);
  __int128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    __int128 t2 = t0 - __int128(q) * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  __int128 t = t0 % static_cast<__int128>(mod.pe);
  if (t < 0) t += static_cast<__int128>(mod.pe);
  return Residue{static_cast<std::uint64_t>(t)};
}

Residue res_pow(const Modulus& mod, Residue base, long long n) {
  if (n < 0) {
    base = res_inv(mod, base);
    // -n in unsigned space avoids overflow on LLONG_MIN.
    std::uint64_t un = ~static_cast<std::uint64_t>(n) + 1;
    Residue acc{1 % mod.pe};
    while (un) {
      if (un & 1) acc = res_mul(mod, acc, base);
      base = res_mul(mod, base, base);
      un >>= 1;
    }
    return acc;
  }
  Residue acc{1 % mod.pe};
  std::uint64_t un = static_cast<std::uint64_t>(n);
  while (un) {
    if (un & 1) acc = res_mul(mod, acc, base);
    base = res_mul(mod, base, base);
    un >>= 1;
  }
  return acc;
}

Residue res_from_rational(const Modulus& mod, long long num, long long den) {
  if (den == 0) throw math_error(errc::divide_by_zero, "rational with zero denominator");
  std::uint64_t ad = den >= 0 ? static_cast<std::uint64_t>(den)
                              : ~static_cast<std::uint64_t>(den) + 1;
  if (ad % mod.p == 0)
    throw math_error(errc::denominator_not_unit, "denominator divisible by p");
  Residue inv = res_inv(mod, res_from_int(mod, den));
  return res_mul(mod, res_from_int(mod, num), inv);
}

bool res_congruent(const Modulus& mod, Residue a, Residue b, unsigned r) {
  std::uint64_t pr = mod.pow_p(r);
  return a.m % pr == b.m % pr;
}

ValUnit vu_zero() { return ValUnit{}; }

ValUnit vu_from_int(const Modulus& mod, long long z) {
  if (z == 0) return vu_zero();
  bool neg = z < 0;
  std::uint64_t az = neg ? ~static_cast<std::uint64_t>(z) + 1
                         : static_cast<std::uint64_t>(z);
  unsigned v = 0;
  while (az % mod.p == 0) {
    az /= mod.p;
    ++v;
  }
  std::uint64_t u = az % mod.pe;
  if (neg) u = mod.pe - u;
  return ValUnit{false, v, u};
}

ValUnit vu_from_residue(const Modulus& mod, Residue r) {
  if (r.m == 0) return vu_zero();
  unsigned v = 0;
  std::uint64_t u = r.m;
  while (u % mod.p == 0) {
    u /= mod.p;
    ++v;
  }
  return ValUnit{false, v, u};
}

ValUnit vu_mul(const Modulus& mod, ValUnit a, ValUnit b) {
  if (a.zero || b.zero) return vu_zero();
  return ValUnit{false, a.v + b.v, mulmod(a.u, b.u, mod.pe)};
}

ValUnit vu_div(const Modulus& mod, ValUnit a, ValUnit b) {
  if (b.zero) throw math_error(errc::divide_by_zero, "division by exact zero");
  if (a.zero) return vu_zero();
  if (a.v < b.v)
    throw math_error(errc::negative_valuation, "quotient has negative valuation");
  Residue q = res_mul(mod, Residue{a.u}, res_inv(mod, Residue{b.u}));
  return ValUnit{false, a.v - b.v, q.m};
}

ValUnit vu_add(const Modulus& mod, ValUnit a, ValUnit b) {
  if (a.zero) return b;
  if (b.zero) return a;
  unsigned vmin = a.v < b.v ? a.v : b.v;
  std::uint64_t ua = mulmod(a.u, pow_p_mod(mod.p, a.v - vmin, mod.pe), mod.pe);
  std::uint64_t ub = mulmod(b.u, pow_p_mod(mod.p, b.v - vmin, mod.pe), mod.pe);
  std::uint64_t s = ua + ub;
  if (s >= mod.pe) s -= mod.pe;
  if (s == 0) return vu_zero();  // true valuation >= vmin + e
  unsigned t = 0;
  while (s % mod.p == 0) {
    s /= mod.p;
    ++t;
  }
  return ValUnit{false, vmin + t, s};
}

ValUnit vu_neg(const Modulus& mod, ValUnit a) {
  if (a.zero) return a;
  return ValUnit{false, a.v, mod.pe - a.u};
}

ValUnit vu_pow(const Modulus& mod, ValUnit a, unsigned n) {
  if (n == 0) return ValUnit{false, 0, 1 % mod.pe};
  if (a.zero) return vu_zero();
  Residue u = res_pow(mod, Residue{a.u}, static_cast<long long>(n));
  return ValUnit{false, a.v * n, u.m};
}

Residue vu_to_residue(const Modulus& mod, ValUnit a) {
  if (a.zero || a.v >= mod.e) return Residue{0};
  return Residue{mulmod(a.u, mod.pow_p(a.v), mod.pe)};
}

}  // namespace supercong
