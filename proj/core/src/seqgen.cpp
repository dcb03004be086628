#include "supercong/seqgen.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace supercong {

using boost::multiprecision::cpp_int;

SeqParams seq_params(Seq s) {
  switch (s) {
    case Seq::A:  return {17, 5, 1};
    case Seq::D:  return {10, 4, 64};
    case Seq::b:  return {-7, -3, 81};
    case Seq::T:  return {12, 4, 16};
    case Seq::V:  return {16, 8, 256};
    case Seq::V3: return {27, 15, 729};
    case Seq::V4: return {64, 40, 4096};
    case Seq::V6: return {432, 312, 186624};
  }
  throw math_error(errc::out_of_range, "unknown sequence");
}

std::string_view seq_name(Seq s) {
  switch (s) {
    case Seq::A:  return "A";
    case Seq::D:  return "D";
    case Seq::b:  return "b";
    case Seq::T:  return "T";
    case Seq::V:  return "V";
    case Seq::V3: return "V3";
    case Seq::V4: return "V4";
    case Seq::V6: return "V6";
  }
  return "?";
}

std::optional<Seq> seq_from_name(std::string_view name) {
  for (Seq s : all_seqs)
    if (seq_name(s) == name) return s;
  return std::nullopt;
}

std::vector<Residue> seq_by_recurrence(const Modulus& mod, Seq s,
                                       std::size_t count) {
  if (count > mod.p)
    throw math_error(errc::out_of_range,
                     "recurrence length must not exceed p");
  SeqParams prm = seq_params(s);
  std::vector<Residue> u(count);
  if (count == 0) return u;
  u[0] = res_from_int(mod, 1);
  if (count > 1) u[1] = res_from_int(mod, prm.b);
  Residue ra = res_from_int(mod, prm.a);
  Residue rb = res_from_int(mod, prm.b);
  Residue rc = res_from_int(mod, prm.c);
  for (std::size_t n = 1; n + 1 < count; ++n) {
    // Coefficients are assembled with residue ops so large p cannot overflow.
    Residue rn = res_from_uint(mod, n);
    Residue rn1 = res_from_uint(mod, n + 1);
    Residue poly = res_add(mod, res_mul(mod, ra, res_mul(mod, rn, rn1)), rb);
    Residue lead = res_mul(mod, res_from_uint(mod, 2 * n + 1), poly);
    Residue n3 = res_mul(mod, rn, res_mul(mod, rn, rn));
    Residue rhs = res_sub(mod, res_mul(mod, lead, u[n]),
                          res_mul(mod, rc, res_mul(mod, n3, u[n - 1])));
    Residue inv = res_inv(mod, res_mul(mod, rn1, res_mul(mod, rn1, rn1)));
    u[n + 1] = res_mul(mod, rhs, inv);
  }
  return u;
}

namespace {

cpp_int big_binom(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  cpp_int acc = 1;
  for (long long i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;
  }
  return acc;
}

cpp_int big_pow(long long base, long long exp) {
  cpp_int acc = 1, b = base;
  for (long long i = 0; i < exp; ++i) acc *= b;
  return acc;
}

Residue reduce_big(const Modulus& mod, const cpp_int& z) {
  cpp_int r = z % mod.pe;
  if (r < 0) r += mod.pe;
  return Residue{r.convert_to<std::uint64_t>()};
}

// One exact term of the requested closed form; summation range is k = 0..n
// with out-of-range binomials vanishing on their own except where noted.
cpp_int direct_value(Seq s, unsigned form, long long n) {
  cpp_int sum = 0;
  switch (s) {
    case Seq::A:
      for (long long k = 0; k <= n; ++k)
        sum += big_binom(n, k) * big_binom(n, k) * big_binom(n + k, k) *
               big_binom(n + k, k);
      return sum;
    case Seq::D:
      for (long long k = 0; k <= n; ++k)
        sum += big_binom(n, k) * big_binom(n, k) * big_binom(2 * k, k) *
               big_binom(2 * n - 2 * k, n - k);
      return sum;
    case Seq::b:
      for (long long k = 0; 3 * k <= n; ++k)
        sum += big_binom(2 * k, k) * big_binom(3 * k, k) * big_binom(n, 3 * k) *
               big_binom(n + k, k) * big_pow(-3, n - 3 * k);
      return sum;
    case Seq::T:
      if (form == 0) {
        for (long long k = 0; k <= n; ++k)
          sum += big_binom(n, k) * big_binom(n, k) * big_binom(2 * k, n) *
                 big_binom(2 * k, n);
      } else {
        for (long long k = 0; 2 * k <= n; ++k)
          sum += big_binom(2 * k, k) * big_binom(2 * k, k) *
                 big_binom(4 * k, 2 * k) * big_binom(n + 2 * k, 4 * k) *
                 big_pow(4, n - 2 * k);
      }
      return sum;
    case Seq::V:
      if (form == 0) {
        for (long long k = 0; k <= n; ++k)
          sum += big_binom(n, k) * big_binom(n + k, k) * big_pow(-1, k) *
                 big_binom(2 * k, k) * big_binom(2 * k, k) *
                 big_pow(16, n - k);
      } else if (form == 1) {
        for (long long k = 0; k <= n; ++k)
          sum += big_binom(2 * k, k) * big_binom(2 * k, k) *
                 big_binom(2 * n - 2 * k, n - k) *
                 big_binom(2 * n - 2 * k, n - k);
      } else {
        for (long long k = 0; k <= n; ++k)
          sum += big_binom(2 * k, k) * big_binom(2 * k, k) *
                 big_binom(2 * k, k) * big_binom(k, n - k) *
                 big_pow(-16, n - k);
      }
      return sum;
    case Seq::V3:
      for (long long k = 0; k <= n; ++k)
        sum += big_binom(n, k) * big_binom(n + k, k) * big_pow(-1, k) *
               big_binom(2 * k, k) * big_binom(3 * k, k) * big_pow(27, n - k);
      return sum;
    case Seq::V4:
      if (form == 0) {
        for (long long k = 0; k <= n; ++k)
          sum += big_binom(n, k) * big_binom(n + k, k) * big_pow(-1, k) *
                 big_binom(2 * k, k) * big_binom(4 * k, 2 * k) *
                 big_pow(64, n - k);
      } else {
        for (long long k = 0; k <= n; ++k)
          sum += big_binom(2 * k, k) * big_binom(2 * k, k) *
                 big_binom(2 * k, k) * big_binom(2 * n - 2 * k, n - k) *
                 big_pow(16, n - k);
      }
      return sum;
    case Seq::V6:
      for (long long k = 0; k <= n; ++k)
        sum += big_binom(n, k) * big_binom(n + k, k) * big_pow(-1, k) *
               big_binom(3 * k, k) * big_binom(6 * k, 3 * k) *
               big_pow(432, n - k);
      return sum;
  }
  throw math_error(errc::out_of_range, "unknown sequence");
}

}  // namespace

unsigned seq_direct_form_count(Seq s) {
  switch (s) {
    case Seq::T: return 2;
    case Seq::V: return 3;
    case Seq::V4: return 2;
    default: return 1;
  }
}

std::vector<Residue> seq_by_direct_form(const Modulus& mod, Seq s,
                                        unsigned form, std::size_t count) {
  if (form >= seq_direct_form_count(s))
    throw math_error(errc::out_of_range, "no such closed form");
  std::vector<Residue> u(count);
  for (std::size_t n = 0; n < count; ++n)
    u[n] = reduce_big(mod, direct_value(s, form, static_cast<long long>(n)));
  return u;
}

std::vector<Residue> seq_by_direct_sum(const Modulus& mod, Seq s,
                                       std::size_t count) {
  return seq_by_direct_form(mod, s, 0, count);
}

namespace {

void check_special_index(std::uint64_t p, unsigned n) {
  if (p < 3) throw math_error(errc::out_of_range, "p must be an odd prime");
  if (n + 3 > p)
    throw math_error(errc::out_of_range, "special number index beyond p-3");
}

}  // namespace

std::uint64_t bernoulli_mod(std::uint64_t p, unsigned n) {
  check_special_index(p, n);
  if (n == 0) return 1 % p;
  // sum_{a=1}^{p-1} a^n = p * B_n (mod p^2): every lower Bernoulli term in
  // the Faulhaber expansion carries at least p^2.
  Modulus m2(p, 2);
  Residue s{0};
  for (std::uint64_t a = 1; a < p; ++a)
    s = res_add(m2, s, res_pow(m2, Residue{a}, n));
  if (s.m % p != 0)
    throw math_error(errc::out_of_range, "power sum not divisible by p");
  return (s.m / p) % p;
}

std::uint64_t euler_mod(std::uint64_t p, unsigned n) {
  check_special_index(p, n);
  Modulus m(p, 1);
  Residue s{0};
  for (std::uint64_t a = 0; a < p; ++a) {
    Residue t = res_pow(m, res_from_uint(m, 2 * a + 1), n);
    s = (a & 1) ? res_sub(m, s, t) : res_add(m, s, t);
  }
  return s.m;
}

std::uint64_t u_mod(std::uint64_t p, unsigned n) {
  check_special_index(p, n);
  Modulus m(p, 1);
  Residue s{0};
  for (std::uint64_t a = 0; a < p; ++a) {
    Residue t = res_add(m, res_pow(m, res_from_uint(m, 3 * a + 1), n),
                        res_pow(m, res_from_uint(m, 3 * a + 2), n));
    s = (a & 1) ? res_sub(m, s, t) : res_add(m, s, t);
  }
  return res_mul(m, s, res_inv(m, res_from_int(m, 2))).m;
}

}  // namespace supercong
