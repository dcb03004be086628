#include "supercong/sumeval.hpp"

namespace supercong {

namespace {

ValUnit vu_from_i128(const Modulus& mod, __int128 z) {
  if (z == 0) return vu_zero();
  bool neg = z < 0;
  unsigned __int128 az = neg ? -static_cast<unsigned __int128>(z)
                             : static_cast<unsigned __int128>(z);
  unsigned v = 0;
  while (az % mod.p == 0) {
    az /= mod.p;
    ++v;
  }
  std::uint64_t u = static_cast<std::uint64_t>(az % mod.pe);
  if (neg) u = mod.pe - u;
  return ValUnit{false, v, u};
}

// Ratio helpers: entry k+1 = entry k * num / den with small integer factors.
ValUnit step(const Modulus& mod, ValUnit cur, __int128 num, __int128 den) {
  return vu_div(mod, vu_mul(mod, cur, vu_from_i128(mod, num)),
                vu_from_i128(mod, den));
}

}  // namespace

BinomTables build_binom_tables(const Modulus& mod) {
  const std::uint64_t p = mod.p;
  BinomTables t;
  t.c2.resize(p);
  t.c3.resize(p);
  t.c4.resize(p);
  t.c6.resize(p);
  ValUnit one{false, 0, 1 % mod.pe};
  t.c2[0] = t.c3[0] = t.c4[0] = t.c6[0] = one;
  for (std::uint64_t k = 0; k + 1 < p; ++k) {
    __int128 kk = k;
    // C(2k+2,k+1) = C(2k,k) * 2(2k+1) / (k+1)
    t.c2[k + 1] = step(mod, t.c2[k], 2 * (2 * kk + 1), kk + 1);
    // C(3k+3,k+1) = C(3k,k) * 3(3k+1)(3k+2) / (2(k+1)(2k+1))
    t.c3[k + 1] = step(mod, t.c3[k], 3 * (3 * kk + 1) * (3 * kk + 2),
                       2 * (kk + 1) * (2 * kk + 1));
    // C(4k+4,2k+2) = C(4k,2k) * 2(4k+1)(4k+3) / ((2k+1)(k+1))
    t.c4[k + 1] = step(mod, t.c4[k], 2 * (4 * kk + 1) * (4 * kk + 3),
                       (2 * kk + 1) * (kk + 1));
    // C(6k+6,3k+3) = C(6k,3k) * 8(6k+1)(2k+1)(6k+5) / ((3k+1)(3k+2)(k+1))
    t.c6[k + 1] = step(mod, t.c6[k], 8 * (6 * kk + 1) * (2 * kk + 1) * (6 * kk + 5),
                       (3 * kk + 1) * (3 * kk + 2) * (kk + 1));
  }
  return t;
}

Residue binom_floor(const Modulus& mod, long long n, long long r) {
  if (n < 0 || static_cast<std::uint64_t>(n) >= mod.p)
    throw math_error(errc::out_of_range, "binomial top must be in [0, p)");
  if (r < 0 || r > n) return Residue{0};
  if (r > n - r) r = n - r;
  // All factors below p, so numerator and denominator are units.
  Residue num{1 % mod.pe}, den{1 % mod.pe};
  for (long long i = 1; i <= r; ++i) {
    num = res_mul(mod, num, res_from_int(mod, n - r + i));
    den = res_mul(mod, den, res_from_int(mod, i));
  }
  return res_mul(mod, num, res_inv(mod, den));
}

namespace {

Residue run_sum(const Modulus& mod, const BinomTables& tables,
                const SumSpec& spec, std::span<const Residue> seq_values) {
  std::uint64_t abs_den = spec.base_den >= 0
                              ? static_cast<std::uint64_t>(spec.base_den)
                              : ~static_cast<std::uint64_t>(spec.base_den) + 1;
  if (spec.base_den == 0)
    throw math_error(errc::divide_by_zero, "zero base denominator");
  if (abs_den % mod.p == 0)
    throw math_error(errc::base_divisible_by_p,
                     "base denominator divisible by p");

  const std::uint64_t limit =
      spec.limit == SumLimit::full ? mod.p - 1 : (mod.p - 1) / 2;
  ValUnit bstep = vu_div(mod, vu_from_int(mod, spec.base_num),
                         vu_from_int(mod, spec.base_den));
  ValUnit bpow{false, 0, 1 % mod.pe};
  Residue acc{0};
  for (std::uint64_t k = 0; k <= limit; ++k) {
    // weight evaluated exactly; degree and coefficients are small enough
    // that 128 bits never overflow for p below 2^21
    __int128 w = 0;
    for (std::size_t i = spec.weight.c.size(); i-- > 0;)
      w = w * static_cast<__int128>(k) + spec.weight.c[i];
    ValUnit term = vu_from_i128(mod, w);
    if (term.zero) {
      bpow = vu_mul(mod, bpow, bstep);
      continue;
    }
    if (spec.n2) term = vu_mul(mod, term, vu_pow(mod, tables.c2[k], spec.n2));
    if (spec.n3) term = vu_mul(mod, term, vu_pow(mod, tables.c3[k], spec.n3));
    if (spec.n4) term = vu_mul(mod, term, vu_pow(mod, tables.c4[k], spec.n4));
    if (spec.n6) term = vu_mul(mod, term, vu_pow(mod, tables.c6[k], spec.n6));
    if (spec.seq) term = vu_mul(mod, term, vu_from_residue(mod, seq_values[k]));
    term = vu_mul(mod, term, bpow);
    if (spec.denom != DenomKind::none) {
      long long d = spec.denom == DenomKind::k_plus_1
                        ? static_cast<long long>(k) + 1
                        : 2 * static_cast<long long>(k) - 1;
      term = vu_div(mod, term,
                    vu_pow(mod, vu_from_int(mod, d), spec.denom_exp));
    }
    acc = res_add(mod, acc, vu_to_residue(mod, term));
    bpow = vu_mul(mod, bpow, bstep);
  }
  return acc;
}

}  // namespace

Residue weighted_sum(const Modulus& mod, const BinomTables& tables,
                     const SumSpec& spec) {
  if (spec.seq)
    throw math_error(errc::unsupported,
                     "sequence factor needs sequence_weighted_sum");
  return run_sum(mod, tables, spec, {});
}

Residue sequence_weighted_sum(const Modulus& mod, const BinomTables& tables,
                              const SumSpec& spec,
                              std::span<const Residue> seq_values) {
  if (!spec.seq)
    throw math_error(errc::unsupported, "spec carries no sequence factor");
  const std::uint64_t limit =
      spec.limit == SumLimit::full ? mod.p - 1 : (mod.p - 1) / 2;
  if (seq_values.size() <= limit)
    throw math_error(errc::out_of_range, "sequence values too short");
  return run_sum(mod, tables, spec, seq_values);
}

}  // namespace supercong
