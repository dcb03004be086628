#pragma once

// Arithmetic in Z/p^e for an odd prime p and small exponent e, plus a
// valuation-tracking representation p^v * u used wherever quantities that are
// divisible by p must later be divided exactly.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace supercong {

enum class errc {
  out_of_range,
  not_unit,
  denominator_not_unit,
  divide_by_zero,
  negative_valuation,
  base_divisible_by_p,
  ambiguous_representation,
  representation_not_found,
  parse_error,
  unsupported,
};

const char* errc_name(errc code);

class math_error : public std::runtime_error {
 public:
  math_error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

// p^e with e in 1..5 and p^e < 2^63, so that any product of two reduced
// residues fits in unsigned __int128.
struct Modulus {
  std::uint64_t p;
  unsigned e;
  std::uint64_t pe;

  Modulus(std::uint64_t p, unsigned e);

  std::uint64_t pow_p(unsigned r) const;  // p^r for r <= e
};

// Canonical residue, always reduced into [0, pe).
struct Residue {
  std::uint64_t m = 0;
};

// z = p^v * u with p not dividing u.  The unit part is kept reduced mod p^e,
// so a ValUnit determines z modulo p^(e+v); that headroom is what makes
// deferred exact division by powers of p possible.  zero means exactly 0
// unless it came from vu_add saturation or vu_from_residue(0), where it only
// means "0 mod p^e" (callers that divide afterwards must avoid those paths).
struct ValUnit {
  bool zero = true;
  unsigned v = 0;
  std::uint64_t u = 0;
};

Residue res_from_int(const Modulus& mod, long long z);
Residue res_from_uint(const Modulus& mod, std::uint64_t z);
Residue res_add(const Modulus& mod, Residue a, Residue b);
Residue res_sub(const Modulus& mod, Residue a, Residue b);
Residue res_mul(const Modulus& mod, Residue a, Residue b);
Residue res_neg(const Modulus& mod, Residue a);

// Throws not_unit when gcd(a, p) > 1.
Residue res_inv(const Modulus& mod, Residue a);

// Negative exponents invert the base first (so the base must be a unit).
Residue res_pow(const Modulus& mod, Residue base, long long n);

// num/den as an element of Z/p^e.  Throws denominator_not_unit when p | den
// and divide_by_zero when den == 0.
Residue res_from_rational(const Modulus& mod, long long num, long long den);

// a == b modulo p^r, r <= e.
bool res_congruent(const Modulus& mod, Residue a, Residue b, unsigned r);

ValUnit vu_zero();
ValUnit vu_from_int(const Modulus& mod, long long z);
// Valuation is capped at e here: the residue only determines v up to e.
ValUnit vu_from_residue(const Modulus& mod, Residue r);
ValUnit vu_mul(const Modulus& mod, ValUnit a, ValUnit b);
// Exact quotient; throws negative_valuation when v(a) < v(b) and
// divide_by_zero when b is zero.
ValUnit vu_div(const Modulus& mod, ValUnit a, ValUnit b);
// Aligns to the smaller valuation.  When the aligned units cancel mod p^e the
// result saturates to zero (the true valuation is >= v_min + e).
ValUnit vu_add(const Modulus& mod, ValUnit a, ValUnit b);
ValUnit vu_neg(const Modulus& mod, ValUnit a);
ValUnit vu_pow(const Modulus& mod, ValUnit a, unsigned n);
Residue vu_to_residue(const Modulus& mod, ValUnit a);

}  // namespace supercong
