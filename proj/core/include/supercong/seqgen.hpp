#pragma once

// The eight integer sequences driven by the shared three-term recurrence
//   u_0 = 1,  u_1 = b,  (n+1)^3 u_{n+1} = (2n+1)(a n(n+1) + b) u_n - c n^3 u_{n-1}
// together with their published binomial-sum closed forms, and the special
// number families (Bernoulli, Euler, and the 1/(2cosh x - 1) sequence)
// reduced modulo p.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "supercong/modring.hpp"

namespace supercong {

// OEIS ids where assigned: A = A005259, D = A002895, b = A125143,
// T = A290575, V = A036917.
enum class Seq { A, D, b, T, V, V3, V4, V6 };

inline constexpr Seq all_seqs[] = {Seq::A, Seq::D, Seq::b, Seq::T,
                                   Seq::V, Seq::V3, Seq::V4, Seq::V6};

struct SeqParams {
  long long a, b, c;
};

SeqParams seq_params(Seq s);
std::string_view seq_name(Seq s);
std::optional<Seq> seq_from_name(std::string_view name);

// u_0 .. u_{count-1} mod p^e via the recurrence; count <= p so that every
// (n+1)^3 divided by stays a unit.
std::vector<Residue> seq_by_recurrence(const Modulus& mod, Seq s,
                                       std::size_t count);

// Exact big-integer evaluation of one of the published closed forms,
// reduced mod p^e.  Form 0 always exists; T has 2 forms, V has 3, V4 has 2.
unsigned seq_direct_form_count(Seq s);
std::vector<Residue> seq_by_direct_form(const Modulus& mod, Seq s,
                                        unsigned form, std::size_t count);
std::vector<Residue> seq_by_direct_sum(const Modulus& mod, Seq s,
                                       std::size_t count);

// Special numbers modulo p (an odd prime), defined by
//   B_0 = 1, sum_{k<n} C(n,k) B_k = 0          (n >= 2)
//   E_0 = 1, E_n = -sum_{k=1}^{[n/2]} C(n,2k) E_{n-2k}
//   U_0 = 1, U_n = -2 sum_{k=1}^{[n/2]} C(n,2k) U_{n-2k}
// Computed through power-sum identities (O(p log n) each):
//   p*B_n     = sum_{a=1}^{p-1} a^n                              (mod p^2)
//   E_n       = sum_{a=0}^{p-1} (-1)^a (2a+1)^n                  (mod p)
//   2*U_n     = sum_{a=0}^{p-1} (-1)^a ((3a+1)^n + (3a+2)^n)     (mod p)
// All three require 0 <= n <= p-3 (keeps B_n p-integral) and throw
// out_of_range beyond that.
std::uint64_t bernoulli_mod(std::uint64_t p, unsigned n);
std::uint64_t euler_mod(std::uint64_t p, unsigned n);
std::uint64_t u_mod(std::uint64_t p, unsigned n);

}  // namespace supercong
